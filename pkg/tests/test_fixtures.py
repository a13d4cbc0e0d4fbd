from fractions import Fraction

import numpy as np
import pytest

from spinorlab import jsonio
from spinorlab.classification import classify
from spinorlab.clifford import build_model
from spinorlab.definitions import Space
from spinorlab.exceptions import UnknownFixture
from spinorlab.fixtures import (
    NAMED_FIXTURES,
    fixture,
    fixture_names,
    fixture_point,
    representative_fixture,
    representative_names,
)
from spinorlab.pure import PureSpinor
from spinorlab.torsion import classify_torsion


@pytest.mark.parametrize("name", sorted(NAMED_FIXTURES))
def test_named_fixtures_decode(name):
    document = jsonio.from_document(fixture(name, 3))
    assert document.m == (2 if name.startswith("pp-wave") else 3)


def test_fixture_names():
    names = fixture_names(3)
    assert "flat" in names
    assert "weyl:2:0" in names
    assert "torsion:-3/2:0" in names
    assert "torsion:-3/2:0" not in fixture_names(2)
    assert len(names) == len(set(names))


@pytest.mark.parametrize("name", [name for name in representative_names(3) if not name.startswith("torsion")])
def test_representative_levels(name):
    space, i, _ = name.split(":")
    document = jsonio.from_document(fixture(name, 3))
    xi = PureSpinor.canonical(build_model(3))
    assert classify(space, document.value, xi).level == Fraction(i)


def test_torsion_representative():
    document = jsonio.from_document(fixture("torsion:-1/2:0", 3))
    assert document.kind == "connection"
    report = classify_torsion(document.value, PureSpinor.canonical(build_model(3)))
    assert "proj_dirac" not in report.holding


def test_fixtures_are_seeded():
    assert representative_fixture("lie:0:0", 3, seed=1) == representative_fixture("lie:0:0", 3, seed=1)
    assert representative_fixture("lie:0:0", 3, seed=1) != representative_fixture("lie:0:0", 3, seed=2)


@pytest.mark.parametrize("name", ["nope", "weyl:5:0", "weyl:2", "riemann:2:0", "weyl:half:0"])
def test_unknown_fixture(name):
    with pytest.raises(UnknownFixture):
        fixture(name, 3)


def test_fixture_point():
    assert np.array_equal(fixture_point("pp-wave", 4), np.zeros(4))
    assert np.array_equal(fixture_point("flat", 3), np.zeros(6))
