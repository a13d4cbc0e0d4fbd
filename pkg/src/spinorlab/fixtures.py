"""
Bundled examples, each an envelope ready for :mod:`spinorlab.jsonio`.

Metric examples are written in null coordinates ``x1..xn`` where the flat
metric pairs ``x_i`` with ``x_{m+i}``. Representatives are named
``<space>:<level>:<j>``, for example ``weyl:2:0``, and are generated from
the canonical spinor with a fixed seed.
"""

from __future__ import annotations

from collections.abc import Callable
from fractions import Fraction
from logging import Logger, getLogger
from typing import Any

import numpy as np
import sympy

from spinorlab.clifford import build_model
from spinorlab.definitions import Chirality, JsonValueT, Space
from spinorlab.diagrams import present_cells
from spinorlab.exceptions import UndefinedComponent, UnknownFixture
from spinorlab.jsonio import to_document
from spinorlab.polynomial import PolynomialMetric, coordinates
from spinorlab.pure import PureSpinor, make_dual_pair
from spinorlab.representatives import random_component, representative

logger: Logger = getLogger(__name__)

#: Seed behind every generated example.
FIXTURE_SEED = 20_160_419


def flat_metric(m: int) -> PolynomialMetric:
    """``g = sum_i dx_i dx_{m+i}``, matching the Clifford model's metric."""
    return PolynomialMetric(m, {(i, m + i): sympy.Rational(1, 2) for i in range(m)})


def conformally_flat_metric(m: int) -> PolynomialMetric:
    """``(1 + x1^2)^2`` times the flat metric."""
    x1 = coordinates(2 * m)[0]
    return flat_metric(m).scaled((1 + x1**2) ** 2)


def pp_wave_metric() -> PolynomialMetric:
    """
    Plane-fronted wave ``2 du dv + 2 dzeta~ dzeta + 2 zeta^2 du^2`` in coordinates ``(u, v, zeta~, zeta)``.

    Its Weyl tensor is type {4} with repeated principal spinor :func:`pp_wave_spinor`.
    """
    x4 = coordinates(4)[3]
    return PolynomialMetric(2, {(0, 1): 1, (2, 3): 1, (0, 0): 2 * x4**2})


def pp_wave_spinor() -> np.ndarray:
    """Parallel spinor of :func:`pp_wave_metric` in the null frame at the origin."""
    return np.array([1, 0], dtype=np.complex128)


def _metric_fixture(build: Callable[[int], PolynomialMetric]) -> Callable[[int], dict[str, JsonValueT]]:
    def fixture(m: int) -> dict[str, JsonValueT]:
        return to_document("metric", m, build(m))

    return fixture


def _pp_wave(m: int) -> dict[str, JsonValueT]:
    return to_document("metric", 2, pp_wave_metric())


def _pp_wave_spinor(m: int) -> dict[str, JsonValueT]:
    return to_document("spinor", 2, pp_wave_spinor())


def _canonical_spinor(m: int) -> dict[str, JsonValueT]:
    return to_document("spinor", m, build_model(m).canonical_spinor(), Chirality.PLUS)


def _zero_connection(m: int) -> dict[str, JsonValueT]:
    n = 2 * m
    return to_document("connection", m, np.zeros((n, n, n), dtype=np.complex128))


NAMED_FIXTURES: dict[str, Callable[[int], dict[str, JsonValueT]]] = {
    "flat": _metric_fixture(flat_metric),
    "conformally-flat": _metric_fixture(conformally_flat_metric),
    "pp-wave": _pp_wave,
    "pp-wave-spinor": _pp_wave_spinor,
    "canonical-spinor": _canonical_spinor,
    "zero-connection": _zero_connection,
}

_DOCUMENT_KINDS = {Space.LIE: "lie", Space.RICCI: "ricci", Space.COTTON: "cotton", Space.WEYL: "weyl", Space.TORSION: "connection"}


def representative_names(m: int) -> list[str]:
    """Names of the bundled representatives for ``m``."""
    return [f"{space.value}:{i}:{j}" for space in Space for i, j in present_cells(space, m)]


def fixture_names(m: int) -> list[str]:
    return [*NAMED_FIXTURES, *representative_names(m)]


def representative_fixture(name: str, m: int, seed: int = FIXTURE_SEED) -> dict[str, JsonValueT]:
    """
    :raises UnknownFixture: ``name`` is not ``<space>:<level>:<j>`` for a present piece
    """
    try:
        space_name, i, j = name.split(":")
        space, cell = Space(space_name), (Fraction(i), int(j))
    except ValueError as exc:
        raise UnknownFixture(f"unknown example {name!r}") from exc
    if cell not in present_cells(space, m):
        raise UnknownFixture(f"{space.value} has no piece {i}^{j} for m={m}")
    model = build_model(m)
    pair = make_dual_pair(model, PureSpinor.canonical(model).components, seed=seed)
    rng = np.random.default_rng(seed)
    try:
        element = representative(space, *cell, pair, random_component(space, m, *cell, rng))
    except UndefinedComponent as exc:
        raise UnknownFixture(str(exc)) from exc
    return to_document(_DOCUMENT_KINDS[space], m, element)


def fixture(name: str, m: int = 2, seed: int = FIXTURE_SEED) -> dict[str, JsonValueT]:
    """
    Envelope of a bundled example.

    :raises UnknownFixture: no example has this name
    """
    logger.debug("Building example %s for m=%d", name, m)
    if name in NAMED_FIXTURES:
        return NAMED_FIXTURES[name](m)
    if ":" in name:
        return representative_fixture(name, m, seed)
    raise UnknownFixture(f"unknown example {name!r}; expected one of {fixture_names(m)}")


def fixture_point(name: str, m: int = 2) -> Any:
    """Point at which a metric example is meant to be evaluated."""
    return np.zeros(2 * (2 if name.startswith("pp-wave") else m))
