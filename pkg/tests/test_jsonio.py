import json

import numpy as np
import pytest

from spinorlab import jsonio
from spinorlab.definitions import Chirality, Space
from spinorlab.exceptions import (
    FileError,
    InputFileNotFoundError,
    NotSkew,
    ParseError,
    SchemaError,
    SymmetryViolation,
)
from spinorlab.fixtures import pp_wave_metric
from spinorlab.representatives import random_component, representative
from tests.conftest import SEED


def envelope(**fields):
    document = {"schema_version": "1.0", "m": 2, "kind": "lie", "data": jsonio.encode_array(np.zeros((4, 4)))}
    document.update(fields)
    return document


def test_tensor_round_trip(pair3):
    rng = np.random.default_rng(SEED)
    weyl = representative(Space.WEYL, 1, 0, pair3, random_component(Space.WEYL, 3, 1, 0, rng))
    document = jsonio.loads(jsonio.dumps("weyl", 3, weyl))
    assert (document.kind, document.m, document.schema_version) == ("weyl", 3, jsonio.SCHEMA_VERSION)
    assert np.allclose(document.value, weyl)


def test_spinor_document(pair3):
    text = jsonio.dumps("spinor", 3, pair3.xi.components, Chirality.MINUS)
    assert json.loads(text)["chirality"] == "-"
    document = jsonio.loads(text)
    assert document.chirality is Chirality.MINUS
    assert np.allclose(document.value, pair3.xi.components)


def test_metric_document():
    document = jsonio.loads(jsonio.dumps("metric", 2, pp_wave_metric()))
    assert document.value == pp_wave_metric()
    with pytest.raises(SchemaError):
        jsonio.from_document(jsonio.to_document("metric", 3, pp_wave_metric()))


def test_legacy_schema():
    document = jsonio.from_document(envelope(schema_version="0.9", data=np.ones((4, 4)).tolist()))
    assert document.value.dtype == np.complex128
    assert np.allclose(document.value, 1)
    with pytest.raises(SchemaError):
        jsonio.from_document(envelope(data=np.zeros((4, 4)).tolist()))


def test_symmetry_checks():
    with pytest.raises(NotSkew):
        jsonio.from_document(envelope(data=jsonio.encode_array(np.ones((4, 4)))))
    with pytest.raises(SymmetryViolation):
        jsonio.from_document(envelope(kind="weyl", data=jsonio.encode_array(np.ones((4,) * 4))))


@pytest.mark.parametrize(
    "document",
    [
        [],
        {"kind": "lie"},
        envelope(schema_version="2.0"),
        envelope(schema_version="not-a-version"),
        envelope(kind="riemann"),
        envelope(m=0),
        envelope(m=3),
        envelope(data="zeros"),
        envelope(kind="spinor", data=jsonio.encode_array([1, 0]), chirality="up"),
    ],
)
def test_malformed_documents(document):
    with pytest.raises(SchemaError):
        jsonio.from_document(document)


def test_to_document_unknown_kind():
    with pytest.raises(SchemaError):
        jsonio.to_document("riemann", 2, np.zeros((4,) * 4))


def test_invalid_json():
    with pytest.raises(ParseError) as exc_info:
        jsonio.loads('{\n  "m": 2,\n  oops\n}')
    assert exc_info.value.line == 3


def test_files(tmp_path):
    path = tmp_path / "lie.json"
    jsonio.dump(path, "lie", 2, np.zeros((4, 4)))
    assert jsonio.load(path).kind == "lie"
    with pytest.raises(InputFileNotFoundError):
        jsonio.load(tmp_path / "missing.json")
    with pytest.raises(FileError):
        jsonio.dump(tmp_path / "missing" / "lie.json", "lie", 2, np.zeros((4, 4)))
