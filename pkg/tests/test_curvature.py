from fractions import Fraction

import numpy as np
import pytest

from spinorlab.clifford import build_model
from spinorlab.curvature import (
    CurvatureBundle,
    algebraic_curvature_part,
    check_cotton,
    check_ricci,
    check_weyl,
    integrability_residuals,
    project_to_cotton,
    project_to_tracefree_ricci,
    project_to_weyl,
    twistor_curvature_residual,
)
from spinorlab.definitions import Space
from spinorlab.diagrams import present_cells
from spinorlab.exceptions import SymmetryViolation
from spinorlab.pure import make_dual_pair
from spinorlab.representatives import random_component, representative
from spinorlab.tensor import skew
from tests.conftest import SEED
from tests.utils import random_complex


def test_projectors_are_idempotent(model, rng):
    n = model.n
    weyl = project_to_weyl(model, random_complex(rng, (n,) * 4))
    cotton = project_to_cotton(model, random_complex(rng, (n,) * 3))
    ricci = project_to_tracefree_ricci(model, random_complex(rng, (n, n)))
    assert np.allclose(project_to_weyl(model, weyl), weyl)
    assert np.allclose(project_to_cotton(model, cotton), cotton)
    assert np.allclose(project_to_tracefree_ricci(model, ricci), ricci)


def test_weyl_symmetries(model, rng):
    n = model.n
    c = project_to_weyl(model, random_complex(rng, (n,) * 4))
    assert np.allclose(c, -c.transpose(1, 0, 2, 3))
    assert np.allclose(c, c.transpose(2, 3, 0, 1))
    assert np.allclose(skew(c, [0, 1, 2]), 0)
    assert np.allclose(np.einsum("ac,abcd->bd", model.ginv, c), 0)


def test_cotton_symmetries(model, rng):
    n = model.n
    a = project_to_cotton(model, random_complex(rng, (n,) * 3))
    assert np.allclose(a, -a.transpose(0, 2, 1))
    assert np.allclose(skew(a, [0, 1, 2]), 0)
    assert np.allclose(np.einsum("ab,abc->c", model.ginv, a), 0)


def test_algebraic_curvature_part(rng):
    r = algebraic_curvature_part(random_complex(rng, (4,) * 4))
    assert np.allclose(algebraic_curvature_part(r), r)


def test_checks_reject_wrong_symmetry(model3):
    with pytest.raises(SymmetryViolation):
        check_weyl(model3, np.ones((6,) * 4))
    with pytest.raises(SymmetryViolation):
        check_ricci(model3, model3.g)
    with pytest.raises(SymmetryViolation):
        check_cotton(model3, np.zeros((6, 6)))


def test_bundle(model3, rng):
    weyl = project_to_weyl(model3, random_complex(rng, (6,) * 4))
    bundle = CurvatureBundle(model3, weyl=weyl, scalar=0.0)
    assert bundle.certificates().weyl < 1e-12
    assert "ricci" not in bundle.certificates()
    with pytest.raises(SymmetryViolation):
        CurvatureBundle(model3, ricci=np.ones((6, 6)))
    with pytest.raises(SymmetryViolation):
        CurvatureBundle(model3, riemann=random_complex(rng, (6,) * 4))


def test_zero_curvature_satisfies_everything(model3, pair3):
    zeros = np.zeros((6,) * 4)
    bundle = CurvatureBundle(model3, weyl=zeros, ricci=np.zeros((6, 6)), scalar=0.0, cotton=np.zeros((6,) * 3), riemann=zeros)
    report = integrability_residuals(pair3.xi, bundle, zeta=np.ones(4))
    assert set(report) == {
        "foliating",
        "strongly_foliating",
        "null_zrm",
        "goldberg_sachs",
        "scalar_flat_weyl",
        "ricci_weyl",
        "recurrent",
        "parallel",
        "twistor",
    }
    assert all(entry.holds for entry in report.values())


def test_top_weyl_piece(model3, pair3, rng):
    weyl = representative(Space.WEYL, 2, 0, pair3, random_component(Space.WEYL, 3, 2, 0, rng))
    report = integrability_residuals(pair3.xi, CurvatureBundle(model3, weyl=weyl))
    assert report.foliating.holds
    assert report.goldberg_sachs.holds
    assert report.twistor.holds


def test_centre_weyl_piece(model3, pair3):
    weyl = representative(Space.WEYL, 0, 0, pair3)
    report = integrability_residuals(pair3.xi, CurvatureBundle(model3, weyl=weyl))
    assert report.goldberg_sachs.holds
    assert not report.scalar_flat_weyl.holds
    assert report.ricci_weyl.holds


def test_generic_weyl(model3, pair3, rng):
    weyl = project_to_weyl(model3, random_complex(rng, (6,) * 4))
    report = integrability_residuals(pair3.xi, CurvatureBundle(model3, weyl=weyl))
    assert not report.foliating.holds
    assert not report.twistor.holds
    assert report.foliating.residual > 0


FOLIATING = {"foliating"}
NULL = FOLIATING | {"strongly_foliating", "null_zrm"}
GOLDBERG_SACHS = NULL | {"goldberg_sachs"}
CENTRE = GOLDBERG_SACHS | {"scalar_flat_weyl", "ricci_weyl"}
EVERY = CENTRE | {"recurrent", "parallel", "twistor"}

# (holding, failing) for a Weyl tensor whose graded part is a single piece.
# Conditions read only above that piece are not listed.
WEYL_CONDITIONS = {
    (2, 0): (EVERY, set()),
    (1, 1): (EVERY, set()),
    (1, 0): (CENTRE | {"recurrent"}, {"parallel", "twistor"}),
    (0, 3): (CENTRE | {"recurrent"}, set()),
    (0, 2): (CENTRE, {"recurrent"}),
    (0, 1): (GOLDBERG_SACHS | {"scalar_flat_weyl", "recurrent"}, {"ricci_weyl"}),
    (0, 0): (GOLDBERG_SACHS | {"ricci_weyl", "recurrent"}, {"scalar_flat_weyl"}),
    (-1, 1): (NULL, {"goldberg_sachs", "recurrent"}),
    (-1, 0): (FOLIATING, {"strongly_foliating", "null_zrm", "goldberg_sachs", "recurrent"}),
    (-2, 0): (set(), {"foliating"}),
}


def dual_pair(m):
    model = build_model(m)
    return make_dual_pair(model, model.canonical_spinor(), seed=SEED)


@pytest.fixture(scope="module")
def pair4():
    return dual_pair(4)


@pytest.fixture(scope="module")
def pair5():
    return dual_pair(5)


def piece(space, cell, pair, rng):
    return representative(space, *cell, pair, random_component(space, pair.model.m, *cell, rng))


def assert_weyl_conditions(pair, cell, rng):
    report = integrability_residuals(pair.xi, CurvatureBundle(pair.model, weyl=piece(Space.WEYL, cell, pair, rng)))
    holding, failing = WEYL_CONDITIONS[cell]
    assert {name for name in holding | failing if report[name].holds} == holding


def test_weyl_condition_table_covers_every_piece():
    for m in (4, 5):
        assert {(int(i), j) for i, j in present_cells(Space.WEYL, m)} == set(WEYL_CONDITIONS)


@pytest.mark.parametrize("cell", list(WEYL_CONDITIONS), ids=str)
def test_weyl_pieces_m4(pair4, rng, cell):
    assert_weyl_conditions(pair4, cell, rng)


@pytest.mark.slow
@pytest.mark.parametrize("cell", list(WEYL_CONDITIONS), ids=str)
def test_weyl_pieces_m5(pair5, rng, cell):
    assert_weyl_conditions(pair5, cell, rng)


@pytest.mark.parametrize(
    ("cell", "holds"),
    [
        ((Fraction(-3, 2), 0), False),
        ((Fraction(-1, 2), 0), True),
        ((Fraction(-1, 2), 1), True),
        ((Fraction(1, 2), 2), True),
        ((Fraction(3, 2), 0), True),
    ],
    ids=str,
)
def test_goldberg_sachs_reads_cotton(pair4, rng, cell, holds):
    weyl = representative(Space.WEYL, 0, 0, pair4)
    cotton = piece(Space.COTTON, cell, pair4, rng)
    without = integrability_residuals(pair4.xi, CurvatureBundle(pair4.model, weyl=weyl))
    report = integrability_residuals(pair4.xi, CurvatureBundle(pair4.model, weyl=weyl, cotton=cotton))
    assert without.goldberg_sachs.holds
    assert report.goldberg_sachs.holds == holds


@pytest.mark.parametrize(
    ("level", "scalar", "recurrent", "parallel"),
    [(1, 0.0, True, True), (1, 1.0, True, False), (0, 0.0, True, False), (-1, 0.0, False, None)],
)
def test_recurrent_and_parallel_read_ricci(pair4, rng, level, scalar, recurrent, parallel):
    weyl = piece(Space.WEYL, (2, 0), pair4, rng)
    ricci = piece(Space.RICCI, (level, 0), pair4, rng)
    report = integrability_residuals(pair4.xi, CurvatureBundle(pair4.model, weyl=weyl, ricci=ricci, scalar=scalar))
    assert report.ricci_weyl.holds
    assert report.recurrent.holds == recurrent
    if parallel is not None:
        assert report.parallel.holds == parallel


def test_twistor_curvature_condition(pair4, rng):
    xi, model = pair4.xi, pair4.model
    weyl = piece(Space.WEYL, (2, 0), pair4, rng)
    top = piece(Space.COTTON, (Fraction(3, 2), 0), pair4, rng)
    bottom = piece(Space.COTTON, (Fraction(-3, 2), 0), pair4, rng)
    zeta = np.zeros(model.half)

    residual = twistor_curvature_residual(xi, zeta, weyl, top)
    assert residual.shape == (model.n, model.n, model.half)
    assert np.allclose(residual, 0)
    assert np.linalg.norm(twistor_curvature_residual(xi, zeta, weyl, bottom)) > 1e-6

    assert integrability_residuals(xi, CurvatureBundle(model, weyl=weyl, cotton=top), zeta=zeta).twistor.holds
    assert not integrability_residuals(xi, CurvatureBundle(model, weyl=weyl, cotton=bottom), zeta=zeta).twistor.holds
