from fractions import Fraction

import numpy as np
import pytest

from spinorlab.exceptions import BadComponentSymmetry, NotSkew, UndefinedComponent
from spinorlab.parabolic import (
    ZERO_LEVEL,
    act,
    check_skew,
    dim_g_components,
    g_filtration_level,
    g_representative,
    grading_check,
    lie_bracket,
    random_g_component,
    stabilizer_check,
)
from spinorlab.pure import make_dual_pair
from tests.conftest import SEED
from tests.utils import random_skew

cells = [(1, 0), (0, 0), (0, 1), (-1, 0)]


@pytest.fixture(scope="module")
def pair(model):
    return make_dual_pair(model, model.canonical_spinor(), seed=SEED)


def element(pair, i, j, rng):
    return g_representative(pair, i, j, random_g_component(pair.model, i, j, rng))


def test_dimensions_add_up(model):
    assert sum(dim_g_components(model.m).values()) == model.n * (model.n - 1) // 2


@pytest.mark.parametrize("i, j", cells)
def test_representative_level(pair, rng, i, j):
    phi = element(pair, i, j, rng)
    assert np.allclose(phi, -phi.T)
    assert g_filtration_level(phi, pair.xi) == Fraction(i)


@pytest.mark.parametrize("i, j", cells)
def test_grading_eigenvalue(pair, rng, i, j):
    report = grading_check(pair, element(pair, i, j, rng))
    assert report.eigenvalue == pytest.approx(i, abs=1e-10)
    assert report.residual < 1e-10


@pytest.mark.parametrize("i, j", cells)
def test_stabilizer(pair, rng, i, j):
    assert stabilizer_check(element(pair, i, j, rng), pair.xi) == (i >= 0)


def test_zero_level(pair):
    assert g_filtration_level(np.zeros((pair.model.n,) * 2), pair.xi) == ZERO_LEVEL


def test_brackets_respect_grading(pair, rng):
    up = element(pair, 1, 0, rng)
    down = element(pair, -1, 0, rng)
    assert np.allclose(lie_bracket(pair.model, up, element(pair, 1, 0, rng)), 0)
    assert g_filtration_level(lie_bracket(pair.model, up, down), pair.xi) >= 0


def test_bracket_matches_spinor_commutator(model, rng):
    phi, psi = random_skew(rng, model.n), random_skew(rng, model.n)
    spin_phi, spin_psi = model.spin_action(phi), model.spin_action(psi)
    commutator = spin_phi @ spin_psi - spin_psi @ spin_phi
    assert np.allclose(commutator, model.spin_action(lie_bracket(model, phi, psi)))


def test_act_preserves_metric(model, rng):
    assert np.allclose(act(model, random_skew(rng, model.n), model.g), 0)


def test_check_skew(model3):
    with pytest.raises(NotSkew):
        check_skew(model3, np.eye(6))
    with pytest.raises(NotSkew):
        check_skew(model3, np.zeros((4, 4)))


def test_bad_components(pair):
    m = pair.model.m
    with pytest.raises(BadComponentSymmetry):
        g_representative(pair, 1, 0, np.ones((m, m)))
    with pytest.raises(BadComponentSymmetry):
        g_representative(pair, 0, 1, np.eye(m))
    with pytest.raises(UndefinedComponent):
        g_representative(pair, 2, 0, np.zeros((m, m)))
