import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spinorlab.definitions import IndexRole
from spinorlab.exceptions import ExtentMismatch, RoleMismatch, ToleranceAmbiguous
from spinorlab.tensor import (
    DenseTensor,
    antisymmetrize,
    cokernel,
    contains,
    contract,
    image_rank,
    intersect,
    kernel,
    numerical_rank,
    outer,
    permutation_sign,
    permutation_signs,
    skew,
    span_basis,
    sym,
    symmetrize,
)
from spinorlab.tolerance import ToleranceContext
from tests.utils import random_complex

UP, DOWN = IndexRole.VECTOR_UP, IndexRole.VECTOR_DOWN


def test_dense_tensor_roles():
    with pytest.raises(RoleMismatch):
        DenseTensor(np.eye(3), [UP])
    t = DenseTensor(np.eye(3), ["vector-up", "vector-down"])
    assert t.roles == (UP, DOWN)
    assert t.shape == (3, 3)
    assert t.norm == pytest.approx(np.sqrt(3))
    assert not t.is_zero()


def test_dense_tensor_is_frozen():
    t = DenseTensor(np.eye(2), [UP, DOWN])
    with pytest.raises(ValueError):
        t.components[0, 0] = 2


def test_from_flat():
    t = DenseTensor.from_flat((2, 2), [UP, UP], [1, 2, 3, 4])
    assert t.components[1, 0] == 3
    assert t.flat().tolist() == [1, 2, 3, 4]
    with pytest.raises(ExtentMismatch):
        DenseTensor.from_flat((2, 2), [UP, UP], [1, 2, 3])


def test_arithmetic():
    a = DenseTensor(np.eye(2), [UP, DOWN])
    b = 2 * a
    assert (a + a) == b
    assert (b - a) == a
    with pytest.raises(RoleMismatch):
        _ = a + DenseTensor(np.eye(2), [UP, UP])
    with pytest.raises(ExtentMismatch):
        _ = a + DenseTensor(np.eye(3), [UP, DOWN])


def test_outer_and_contract():
    rng = np.random.default_rng(1)
    u = DenseTensor(random_complex(rng, 4), [UP])
    w = DenseTensor(random_complex(rng, 4), [DOWN])
    product = outer(u, w)
    assert product.roles == (UP, DOWN)
    traced = contract(product, 0, 1)
    assert traced.roles == ()
    assert complex(traced.components) == pytest.approx(complex(u.components @ w.components))


def test_contract_rejects_bad_pairs():
    t = DenseTensor(np.zeros((3, 3)), [UP, UP])
    with pytest.raises(RoleMismatch):
        contract(t, 0, 1)
    with pytest.raises(RoleMismatch):
        contract(DenseTensor(np.zeros((3, 3)), [UP, DOWN]), 0, 0)
    with pytest.raises(ExtentMismatch):
        contract(DenseTensor(np.zeros((3, 2)), [UP, DOWN]), 0, 1)
    spinors = DenseTensor(np.eye(4), [IndexRole.SPINOR_PLUS, IndexRole.DUAL_PLUS])
    assert complex(contract(spinors, 0, 1).components) == 4
    with pytest.raises(RoleMismatch):
        contract(DenseTensor(np.eye(4), [IndexRole.SPINOR_PLUS, IndexRole.DUAL_MINUS]), 0, 1)


def test_permutation_signs():
    signs = dict(permutation_signs(3))
    assert len(signs) == 6
    assert signs[(0, 1, 2)] == 1
    assert signs[(1, 0, 2)] == -1
    assert signs[(1, 2, 0)] == 1
    assert permutation_sign([5, 2]) == -1
    assert permutation_sign([1, 1]) == 0


@settings(max_examples=25, deadline=None)
@given(st.integers(min_value=0, max_value=2**32 - 1))
def test_brackets_are_projectors(seed):
    rng = np.random.default_rng(seed)
    t = random_complex(rng, (3, 3, 3))
    assert np.allclose(skew(skew(t, [0, 1, 2]), [0, 1, 2]), skew(t, [0, 1, 2]))
    assert np.allclose(sym(sym(t, [0, 2]), [0, 2]), sym(t, [0, 2]))
    assert np.allclose(skew(t, [0, 1]) + sym(t, [0, 1]), t)
    assert np.allclose(skew(sym(t, [0, 1]), [0, 1, 2]), 0)


def test_antisymmetrize_checks_roles():
    t = DenseTensor(np.ones((2, 2)), [UP, DOWN])
    with pytest.raises(RoleMismatch):
        antisymmetrize(t, [0, 1])
    with pytest.raises(ExtentMismatch):
        symmetrize(DenseTensor(np.ones((2, 3)), [UP, UP]), [0, 1])
    assert np.allclose(antisymmetrize(DenseTensor(np.ones((2, 2)), [UP, UP]), [0, 1]).components, 0)


def test_numerical_rank():
    assert numerical_rank(np.eye(5)) == 5
    assert numerical_rank(np.zeros((3, 3))) == 0
    assert numerical_rank(np.diag([1.0, 1.0, 1e-14])) == 2


def test_numerical_rank_ambiguous():
    near_cutoff = np.diag([1.0, 2e-8])
    with pytest.raises(ToleranceAmbiguous):
        numerical_rank(near_cutoff)
    relaxed = ToleranceContext(raise_on_ambiguous_rank=False)
    assert numerical_rank(near_cutoff, relaxed) == 2


def test_kernel_cokernel():
    rng = np.random.default_rng(2)
    a = random_complex(rng, (3, 5))
    k = kernel(a)
    assert k.shape == (5, 2)
    assert np.allclose(a @ k, 0)
    c = cokernel(a.T)
    assert c.shape == (2, 5)
    assert np.allclose(c @ a.T, 0)


def test_span_intersect_contains():
    e = np.eye(4)
    a = span_basis(e[:, :2])
    b = span_basis(e[:, 1:3])
    both = intersect(a, b)
    assert both.shape == (4, 1)
    assert contains(both, e[:, 1])
    assert not contains(both, e[:, 0])
    assert intersect(a, np.zeros((4, 0))).shape == (4, 0)


def test_image_rank():
    domain = np.eye(4)[:, :3]
    assert image_rank(lambda v: np.array([v[0], v[0] + v[1]]), domain) == 2
