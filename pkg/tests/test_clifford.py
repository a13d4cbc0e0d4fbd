from math import comb

import numpy as np
import pytest

from spinorlab.clifford import (
    MAX_M,
    MIN_M,
    build_model,
    clifford_residual,
    compress_form,
    expand_form,
    gamma_identity_residuals,
    gamma_multi,
    hodge_matrix,
    hodge_star,
    pform_bilinear,
    self_dual_projector,
    wedge_product,
)
from spinorlab.definitions import Chirality
from spinorlab.exceptions import NotSkew, UnsupportedDimension
from tests.utils import random_complex, random_skew


@pytest.mark.parametrize("m", [MIN_M - 1, MAX_M + 1, 0, "3"])
def test_unsupported_dimension(m):
    with pytest.raises(UnsupportedDimension):
        build_model(m)


def test_model_is_cached():
    assert build_model(3) is build_model(3)


def test_sizes(model):
    assert model.n == 2 * model.m
    assert model.dim == 2**model.m
    assert model.half == 2 ** (model.m - 1)
    assert model.gamma.shape == (model.n, model.dim, model.dim)
    assert len(model.masks(Chirality.PLUS)) == len(model.masks(Chirality.MINUS)) == model.half


def test_clifford_relations(model):
    assert clifford_residual(model) < 1e-12


def test_gammas_flip_chirality(model):
    chirality = np.diag(model.chirality)
    for a in range(model.n):
        assert np.allclose(chirality @ model.gamma[a] + model.gamma[a] @ chirality, 0)


@pytest.mark.parametrize("seed", [1, 5, 11])
@pytest.mark.parametrize("p", range(MAX_M))
def test_gamma_identities(wide_model, p, seed):
    if p > wide_model.m:
        pytest.skip("form degree above m")
    sandwich, trace = gamma_identity_residuals(wide_model, p, seed=seed)
    assert sandwich < 1e-9
    assert trace < 1e-9


def test_gamma_multi_is_skew(model3):
    assert np.allclose(gamma_multi(model3, (0, 1)), -gamma_multi(model3, (1, 0)))
    assert np.allclose(gamma_multi(model3, (2, 2)), 0)


def test_wedge_product_of_parallel_vectors(model3):
    rng = np.random.default_rng(3)
    v = random_complex(rng, model3.n)
    assert np.allclose(wedge_product(model3, [v, 2 * v]), 0)


def test_orientation_element(model):
    volume = model.orientation_element()
    assert np.allclose(volume @ volume, np.eye(model.dim))
    assert np.allclose(volume, np.diag(model.chirality))


def test_spin_action_matches_vector_action(model3):
    rng = np.random.default_rng(4)
    phi = random_skew(rng, model3.n)
    v = random_complex(rng, model3.n)
    action = model3.spin_action(phi)
    commutator = action @ model3.vector_gamma(v) - model3.vector_gamma(v) @ action
    assert np.allclose(commutator, model3.vector_gamma(model3.vector_action(phi) @ v))


def test_compress_expand_form(model3):
    rng = np.random.default_rng(6)
    values = random_complex(rng, comb(model3.n, 3))
    form = expand_form(values, model3.n, 3)
    assert np.allclose(form, -form.transpose(1, 0, 2))
    assert np.allclose(compress_form(form), values)


def test_hodge_matrix_shape(model3):
    assert hodge_matrix(model3, 2).shape == (comb(6, 4), comb(6, 2))
    with pytest.raises(ValueError):
        hodge_matrix(model3, 7)


def test_hodge_star_is_invertible(model):
    star = hodge_matrix(model, model.m)
    assert np.linalg.matrix_rank(star) == comb(model.n, model.m)


def test_hodge_star_requires_skew(model3):
    with pytest.raises(NotSkew):
        hodge_star(model3, np.ones((6, 6)))
    with pytest.raises(NotSkew):
        hodge_star(model3, np.zeros((4, 4)))


def test_self_dual_projectors(model):
    plus = self_dual_projector(model)
    minus = self_dual_projector(model, anti=True)
    size = comb(model.n, model.m)
    assert np.allclose(plus @ plus, plus)
    assert np.allclose(plus + minus, np.eye(size))
    assert np.allclose(plus @ minus, 0)
    assert round(np.trace(plus).real) == size // 2


def test_canonical_spinor(model):
    xi = model.canonical_spinor()
    assert xi.shape == (model.half,)
    assert np.count_nonzero(xi) == 1


def test_gammas_are_skew_for_the_bilinear(wide_model):
    form = wide_model.bilinear_form
    for a in range(wide_model.n):
        gamma = wide_model.gamma[a]
        assert np.allclose(gamma.T @ form, -form @ gamma), a


def test_bilinear_is_spin_invariant(wide_model, rng):
    action = wide_model.spin_action(random_skew(rng, wide_model.n))
    form = wide_model.bilinear_form
    assert np.allclose(action.T @ form + form @ action, 0)


def test_bilinear_rank_and_symmetry(wide_model):
    m = wide_model.m
    form = wide_model.bilinear_form
    assert np.linalg.matrix_rank(form) == wide_model.dim
    assert np.allclose(form.T, (-1) ** (m * (m + 1) // 2) * form)


def test_chiral_pairing(wide_model):
    if wide_model.m % 2:
        paired, unpaired = Chirality.MINUS, Chirality.PLUS
    else:
        paired, unpaired = Chirality.PLUS, Chirality.MINUS
    assert np.linalg.matrix_rank(wide_model.chiral_pairing(Chirality.PLUS, paired)) == wide_model.half
    assert np.allclose(wide_model.chiral_pairing(Chirality.PLUS, unpaired), 0)


@pytest.mark.parametrize("p", range(MAX_M))
def test_pform_bilinear_symmetry(wide_model, rng, p):
    m = wide_model.m
    if p > m:
        pytest.skip("form degree above m")
    xi = random_complex(rng, wide_model.dim)
    zeta = random_complex(rng, wide_model.dim)
    forward = pform_bilinear(wide_model, p, xi, zeta)
    assert np.linalg.norm(forward) > 1e-6
    assert np.allclose(forward, (-1) ** ((p * (p + 1) + m * (m + 1)) // 2) * pform_bilinear(wide_model, p, zeta, xi))


def test_middle_form_of_chiral_spinor_is_self_dual(wide_model, rng):
    xi = wide_model.embed(random_complex(rng, wide_model.half), Chirality.PLUS)
    values = compress_form(pform_bilinear(wide_model, wide_model.m, xi, xi))
    scale = np.linalg.norm(values)
    assert scale > 1e-6
    assert np.linalg.norm(self_dual_projector(wide_model, anti=True) @ values) < 1e-10 * scale
    assert np.allclose(self_dual_projector(wide_model) @ values, values)
