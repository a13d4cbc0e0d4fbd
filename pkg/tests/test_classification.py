from fractions import Fraction

import numpy as np
import pytest

from spinorlab.classification import (
    classify,
    module_dims,
    projection_residuals,
    rank_table,
    space_basis,
    stage_bases,
    total_dim,
    validate_element,
)
from spinorlab.clifford import build_model
from spinorlab.curvature import project_to_weyl
from spinorlab.definitions import Space, cell_name
from spinorlab.exceptions import NotSkew, SymmetryViolation
from spinorlab.parabolic import ZERO_LEVEL
from spinorlab.pure import make_dual_pair
from spinorlab.representatives import random_component, representative
from tests.conftest import SEED
from tests.utils import random_complex


@pytest.fixture(scope="module")
def pair(model):
    return make_dual_pair(model, model.canonical_spinor(), seed=SEED)


@pytest.mark.parametrize(
    "space, m, total",
    [
        ("weyl", 3, 84),
        ("cotton", 3, 64),
        ("ricci", 3, 20),
        ("lie", 3, 15),
        ("torsion", 3, 18),
        ("torsion", 4, 48),
        ("weyl", 2, 10),
        ("cotton", 2, 16),
        ("weyl", 4, 300),
    ],
)
def test_total_dim(space, m, total):
    assert total_dim(space, m) == total


@pytest.mark.parametrize("space", list(Space), ids=lambda s: s.value)
@pytest.mark.parametrize("m", [2, 3, 4, 5, 6])
def test_module_dims_add_up(space, m):
    assert sum(module_dims(space, m).values()) == total_dim(space, m)


def test_weyl_dims_at_three():
    assert sorted(module_dims("weyl", 3).values()) == [0, 1, 3, 3, 6, 6, 8, 15, 15, 27]
    assert module_dims("weyl", 3)[(Fraction(0), 2)] == 0
    assert module_dims("weyl", 4)[(Fraction(0), 2)] == 20


@pytest.mark.parametrize("space", list(Space), ids=lambda s: s.value)
def test_rank_table(pair, space):
    table = rank_table(space, pair, seed=SEED)
    assert table.measured == table.expected
    assert table.total == table.expected_total == total_dim(space, pair.model.m)
    assert table.agrees


@pytest.mark.slow
@pytest.mark.parametrize("space", list(Space), ids=lambda s: s.value)
def test_rank_table_m5(space):
    model = build_model(5)
    table = rank_table(space, make_dual_pair(model, model.canonical_spinor(), seed=SEED), seed=SEED)
    assert table.agrees


def test_space_basis_dimension(pair):
    for space in (Space.LIE, Space.RICCI, Space.WEYL):
        assert space_basis(space, pair, SEED).shape[1] == total_dim(space, pair.model.m)


def test_stages_are_nested(pair3):
    stages = stage_bases(Space.WEYL, pair3, SEED)
    dims = [stages[level].shape[1] for level in sorted(stages)]
    assert dims == sorted(dims, reverse=True)
    assert dims[0] == 84
    assert dims[-1] == module_dims(Space.WEYL, 3)[(Fraction(2), 0)]


def test_zero_tensor(pair3):
    report = classify(Space.WEYL, np.zeros((6,) * 4), pair3.xi)
    assert report.level == ZERO_LEVEL
    assert report.level_name == "inf"
    assert report.position == "0"


def test_generic_weyl_is_bottom(pair3, rng):
    weyl = project_to_weyl(pair3.model, random_complex(rng, (6,) * 4))
    report = classify(Space.WEYL, weyl, pair3.xi)
    assert report.level == -2
    assert report.surviving == ["ℭ_-2^0"]
    assert not report.vanishing["ℭ_-2^0"]
    assert set(report.residuals) == {cell_name(Space.WEYL, *cell) for cell in projection_residuals(Space.WEYL, weyl, pair3.xi)}


def test_position_lists_every_surviving_piece(pair3, rng):
    parts = [representative(Space.WEYL, 1, j, pair3, random_component(Space.WEYL, 3, 1, j, rng)) for j in (0, 1)]
    top = representative(Space.WEYL, 2, 0, pair3, random_component(Space.WEYL, 3, 2, 0, rng))
    report = classify(Space.WEYL, parts[0] + parts[1] + top, pair3.xi)
    assert report.level == 1
    assert sorted(report.surviving) == ["ℭ_1^0", "ℭ_1^1"]
    assert report.position in ("ℭ_1^0 + ℭ_1^1", "ℭ_1^1 + ℭ_1^0")


def test_scaling_keeps_level(pair3, rng):
    element = representative(Space.COTTON, Fraction(1, 2), 2, pair3, random_component(Space.COTTON, 3, Fraction(1, 2), 2, rng))
    levels = {classify(Space.COTTON, scale * element, pair3.xi).level for scale in (1e-6, 1.0, 1e6)}
    assert levels == {Fraction(1, 2)}


def test_spinor_scale_does_not_matter(pair3, rng):
    element = representative(Space.RICCI, 0, 0, pair3, random_component(Space.RICCI, 3, 0, 0, rng))
    assert classify(Space.RICCI, element, pair3.xi.scaled(1e4)).level == 0


@pytest.mark.parametrize(
    "space, tensor, error",
    [
        ("weyl", np.ones((6,) * 4), SymmetryViolation),
        ("ricci", np.ones((6, 6)), SymmetryViolation),
        ("cotton", np.ones((6,) * 3), SymmetryViolation),
        ("weyl", np.zeros((4,) * 4), SymmetryViolation),
        ("lie", np.eye(6), NotSkew),
        ("torsion", np.ones((6,) * 3), NotSkew),
    ],
)
def test_validate_element(model3, space, tensor, error):
    with pytest.raises(error):
        validate_element(space, model3, tensor)
