"""
JSON documents for spinors, tensors and polynomial metrics.

Every document is an envelope::

    {"schema_version": "1.0", "m": 3, "kind": "weyl", "data": [...]}

Complex numbers are ``[re, im]`` pairs and tensors are nested row-major
lists. Spinor documents also carry ``"chirality": "+"`` or ``"-"``.
Documents written with schema ``0.9`` are still read; they may hold plain
real numbers and their tensors are not checked for symmetries.
"""

from __future__ import annotations

import errno
import json
from functools import cache
from logging import Logger, getLogger
from os import PathLike
from os import strerror as os_strerror
from pathlib import Path
from typing import Any, Final

import numpy as np
import packaging.version

from spinorlab.classification import validate_element
from spinorlab.clifford import build_model
from spinorlab.definitions import ArrayT, Chirality, Dictionary, JsonValueT, Space
from spinorlab.exceptions import (
    FileError,
    InputFileNotFoundError,
    InputFilePermissionError,
    ParseError,
    SchemaError,
)
from spinorlab.polynomial import PolynomialMetric
from spinorlab.tolerance import ToleranceContext

logger: Logger = getLogger(__name__)

SCHEMA_VERSION: Final = "1.0"
#: Oldest schema still read; symmetry checks start with 1.0.
OLDEST_SCHEMA_VERSION: Final = "0.9"

#: Tensor rank of every array kind, and the space whose symmetries it must have.
KINDS: dict[str, tuple[int, Space | None]] = {
    "spinor": (1, None),
    "lie": (2, Space.LIE),
    "ricci": (2, Space.RICCI),
    "cotton": (3, Space.COTTON),
    "weyl": (4, Space.WEYL),
    "connection": (3, Space.TORSION),
    "metric": (0, None),
}

PathT = str | PathLike[str]


@cache
def v(version: str) -> packaging.version.Version:
    """Caching version parser."""
    return packaging.version.Version(version)


def is_schema_supported(version: str) -> bool:
    """
    >>> is_schema_supported("1.0"), is_schema_supported("0.9"), is_schema_supported("2.0")
    (True, True, False)
    """
    try:
        parsed = v(version)
    except packaging.version.InvalidVersion:
        return False
    return v(OLDEST_SCHEMA_VERSION) <= parsed <= v(SCHEMA_VERSION)


def encode_array(array: Any) -> JsonValueT:
    """Nested lists with every complex entry as ``[re, im]``."""
    array = np.asarray(array, dtype=np.complex128)
    return np.stack([array.real, array.imag], axis=-1).tolist()  # type: ignore[no-any-return]


def decode_array(data: Any, shape: tuple[int, ...], allow_real: bool = False) -> ArrayT:
    """
    :raises SchemaError: ``data`` does not have the expected shape
    """
    try:
        raw = np.asarray(data, dtype=np.float64)
    except (TypeError, ValueError) as exc:
        raise SchemaError(f"array data is not numeric: {exc}") from exc
    if allow_real and raw.shape == shape:
        return raw.astype(np.complex128)
    if raw.shape != (*shape, 2):
        raise SchemaError(f"expected an array of shape {shape} with [re, im] entries; got shape {raw.shape}")
    return raw[..., 0] + 1j * raw[..., 1]


def _shape(kind: str, m: int) -> tuple[int, ...]:
    rank = KINDS[kind][0]
    if kind == "spinor":
        return (1 << (m - 1),)
    return (2 * m,) * rank


def to_document(kind: str, m: int, value: Any, chirality: Chirality | int = Chirality.PLUS) -> dict[str, JsonValueT]:
    """
    Envelope for ``value``.

    :raises SchemaError: unknown kind
    """
    if kind not in KINDS:
        raise SchemaError(f"unknown kind {kind!r}; expected one of {sorted(KINDS)}")
    document: dict[str, JsonValueT] = {"schema_version": SCHEMA_VERSION, "m": m, "kind": kind}
    if kind == "metric":
        document["data"] = value.to_json()
    else:
        document["data"] = encode_array(getattr(value, "components", value))
    if kind == "spinor":
        document["chirality"] = Chirality(chirality).sign
    return document


def from_document(document: Any, tol: ToleranceContext | None = None) -> Dictionary:
    """
    Decode and validate an envelope.

    The result has ``kind``, ``m``, ``schema_version`` and ``value``; spinors
    also get ``chirality``.

    :raises SchemaError: missing fields, unsupported schema, unknown kind or wrong shape
    :raises SymmetryViolation: a curvature tensor lacks its symmetries
    :raises NotSkew: a Lie algebra element or connection is not skew
    """
    if not isinstance(document, dict):
        raise SchemaError("document must be a JSON object")
    try:
        version = str(document["schema_version"])
        kind = str(document["kind"])
        m = int(document["m"])
        data = document["data"]
    except (KeyError, TypeError, ValueError) as exc:
        raise SchemaError(f"envelope is missing a field or has a bad value: {exc}") from exc
    if not is_schema_supported(version):
        raise SchemaError(f"schema version {version} is not supported; expected {OLDEST_SCHEMA_VERSION}..{SCHEMA_VERSION}")
    if kind not in KINDS:
        raise SchemaError(f"unknown kind {kind!r}; expected one of {sorted(KINDS)}")
    legacy = v(version) < v(SCHEMA_VERSION)
    result = Dictionary(kind=kind, m=m, schema_version=version)
    if kind == "metric":
        result.value = PolynomialMetric.from_json(data)
        if result.value.m != m:
            raise SchemaError(f"metric data has m={result.value.m} but the envelope says m={m}")
        return result
    if m < 1:
        raise SchemaError(f"m must be positive; got {m}")
    value = decode_array(data, _shape(kind, m), allow_real=legacy)
    if kind == "spinor":
        sign = document.get("chirality", "+")
        if sign not in ("+", "-"):
            raise SchemaError(f"chirality must be '+' or '-'; got {sign!r}")
        result.chirality = Chirality.PLUS if sign == "+" else Chirality.MINUS
    elif not legacy:
        value = validate_element(KINDS[kind][1], build_model(m, tol), value)  # type: ignore[arg-type]
    result.value = value
    logger.debug("Decoded %s document for m=%d (schema %s)", kind, m, version)
    return result


def dumps(kind: str, m: int, value: Any, chirality: Chirality | int = Chirality.PLUS) -> str:
    return json.dumps(to_document(kind, m, value, chirality), indent=1)


def loads(text: str, tol: ToleranceContext | None = None) -> Dictionary:
    """
    :raises ParseError: the text is not JSON
    """
    try:
        document = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, line=exc.lineno, column=exc.colno) from exc
    return from_document(document, tol)


def read_text(path: PathT) -> str:
    """
    :raises InputFileNotFoundError: the file does not exist
    :raises InputFilePermissionError: the file cannot be read
    """
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as io_err:
        if io_err.errno == errno.ENOENT:
            raise InputFileNotFoundError(errno.ENOENT, os_strerror(errno.ENOENT), str(path)) from io_err
        if io_err.errno == errno.EACCES:
            raise InputFilePermissionError(errno.EACCES, os_strerror(errno.EACCES), str(path)) from io_err
        raise FileError(io_err) from io_err


def load(path: PathT, tol: ToleranceContext | None = None) -> Dictionary:
    return loads(read_text(path), tol)


def dump(path: PathT, kind: str, m: int, value: Any, chirality: Chirality | int = Chirality.PLUS) -> None:
    """
    :raises FileError: the file cannot be written
    """
    try:
        Path(path).write_text(dumps(kind, m, value, chirality) + "\n", encoding="utf-8")
    except OSError as io_err:
        raise FileError(io_err) from io_err
