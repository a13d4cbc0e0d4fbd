"""
Clifford module of a 2m-dimensional complex inner-product space.

The spinor space is the exterior algebra of a totally null m-plane N in the
bitmask basis: bit ``i`` of a mask is ``e_i``. Vector indices ``0..m-1`` are the
null frame ``e_i`` spanning N and ``m..2m-1`` the dual frame ``f_i``, with
``g(e_i, f_j) = 1/2``. ``e_i`` acts by wedging and ``f_i`` by minus
contraction, so ``gamma_a gamma_b + gamma_b gamma_a = -2 g_ab``.

Index-order products are used throughout: the abstract product
``gamma_{a_1 ... a_p}`` acting on ``xi`` is the matrix
``Gamma_{a_p} ... Gamma_{a_1}`` applied to ``xi``, antisymmetrized.
"""

from __future__ import annotations

from functools import cache
from itertools import combinations
from logging import Logger, getLogger
from math import comb, factorial
from typing import Any

import numpy as np

from spinorlab.definitions import ArrayT, Chirality
from spinorlab.exceptions import NotSkew, UnsupportedDimension
from spinorlab.tensor import DenseTensor, permutation_sign, permutation_signs, skew
from spinorlab.tolerance import DEFAULT_TOLERANCE, ToleranceContext

logger: Logger = getLogger(__name__)

MIN_M = 2
MAX_M = 6
#: Largest dense array produced by :func:`hodge_star`.
MAX_DENSE_ENTRIES = 1 << 22


def _frozen(array: Any) -> ArrayT:
    array = np.asarray(array, dtype=np.complex128)
    array.setflags(write=False)
    return array


def _bits_below(mask: int, bit: int) -> int:
    return bin(mask & ((1 << bit) - 1)).count("1")


def _merge_sign(first: int, second: int, m: int) -> int:
    """Sign of ``e_first ^ e_second`` relative to the sorted wedge of both masks."""
    inversions = 0
    for i in range(m):
        if first >> i & 1:
            inversions += _bits_below(second, i)
    return -1 if inversions % 2 else 1


@cache
def _tables(m: int) -> dict[str, ArrayT]:
    n = 2 * m
    dim = 1 << m
    gamma = np.zeros((n, dim, dim), dtype=np.complex128)
    for i in range(m):
        bit = 1 << i
        for mask in range(dim):
            sign = -1 if _bits_below(mask, i) % 2 else 1
            if mask & bit:
                gamma[m + i, mask ^ bit, mask] = -sign
            else:
                gamma[i, mask | bit, mask] = sign

    metric = np.zeros((n, n), dtype=np.complex128)
    inverse = np.zeros((n, n), dtype=np.complex128)
    for i in range(m):
        metric[i, m + i] = metric[m + i, i] = 0.5
        inverse[i, m + i] = inverse[m + i, i] = 2.0

    top = dim - 1
    form = np.zeros((dim, dim), dtype=np.complex128)
    for mask in range(dim):
        k = bin(mask).count("1")
        conjugate = -1 if (k * (k + 1) // 2) % 2 else 1
        form[mask, top ^ mask] = conjugate * _merge_sign(mask, top ^ mask, m)

    plus = np.array([mask for mask in range(dim) if bin(mask).count("1") % 2 == m % 2])
    minus = np.array([mask for mask in range(dim) if bin(mask).count("1") % 2 != m % 2])
    chirality = np.array([1.0 if bin(mask).count("1") % 2 == m % 2 else -1.0 for mask in range(dim)])
    return {
        "gamma": _frozen(gamma),
        "g": _frozen(metric),
        "ginv": _frozen(inverse),
        "bilinear": _frozen(form),
        "plus": plus,
        "minus": minus,
        "chirality": _frozen(chirality),
    }


class CliffordModel:
    """
    Spinor module, metric and gamma tables for fixed ``m``.

    Build with :func:`build_model`; instances are immutable and shared.

    :Usage:
        >>> from spinorlab import build_model
        >>> model = build_model(3)
        >>> model.half
        4
    """

    def __init__(self, m: int, tol: ToleranceContext | None = None):
        if not MIN_M <= m <= MAX_M:
            raise UnsupportedDimension(f"m must lie in {MIN_M}..{MAX_M}; got {m}")
        tables = _tables(m)
        self.m = m
        self.n = 2 * m
        self.dim = 1 << m
        self.half = 1 << (m - 1)
        self.tol = tol or DEFAULT_TOLERANCE
        self.g: ArrayT = tables["g"]
        self.ginv: ArrayT = tables["ginv"]
        self.gamma: ArrayT = tables["gamma"]
        self.bilinear_form: ArrayT = tables["bilinear"]
        self.chirality: ArrayT = tables["chirality"]
        self.plus_masks = tables["plus"]
        self.minus_masks = tables["minus"]
        self.gamma_up: ArrayT = _frozen(np.einsum("ab,bij->aij", self.ginv, self.gamma))
        plus, minus = self.plus_masks, self.minus_masks
        #: S+ -> S- blocks ``gpm[a][A, B']``
        self.gpm: ArrayT = _frozen(self.gamma[:, minus][:, :, plus])
        #: S- -> S+ blocks ``gmp[a][A', B]``
        self.gmp: ArrayT = _frozen(self.gamma[:, plus][:, :, minus])
        self.gpm_up: ArrayT = _frozen(np.einsum("ab,bij->aij", self.ginv, self.gpm))
        self.gmp_up: ArrayT = _frozen(np.einsum("ab,bij->aij", self.ginv, self.gmp))
        #: volume form component ``epsilon_{0 1 ... n-1}``
        self.volume_coefficient = complex((-1) ** (m * (m - 1) // 2) * (0.5j) ** m)
        logger.debug("Built Clifford model m=%d with spinor dimension %d", m, self.dim)

    def __repr__(self) -> str:
        return f"CliffordModel(m={self.m})"

    def masks(self, chirality: Chirality | int) -> Any:
        return self.plus_masks if Chirality(chirality) is Chirality.PLUS else self.minus_masks

    def embed(self, half: Any, chirality: Chirality | int = Chirality.PLUS) -> ArrayT:
        """Full spinor with the chiral components ``half``."""
        full = np.zeros(self.dim, dtype=np.complex128)
        full[self.masks(chirality)] = np.asarray(half, dtype=np.complex128)
        return full

    def restrict(self, full: Any, chirality: Chirality | int = Chirality.PLUS) -> ArrayT:
        return np.asarray(full, dtype=np.complex128)[self.masks(chirality)]

    def to_other(self, chirality: Chirality | int) -> ArrayT:
        """Gamma blocks leaving the given chirality."""
        return self.gpm if Chirality(chirality) is Chirality.PLUS else self.gmp

    def to_same(self, chirality: Chirality | int) -> ArrayT:
        """Gamma blocks arriving at the given chirality."""
        return self.gmp if Chirality(chirality) is Chirality.PLUS else self.gpm

    def canonical_spinor(self) -> ArrayT:
        """``e_1 ^ ... ^ e_m`` as S+ components."""
        return self.restrict(np.eye(self.dim, dtype=np.complex128)[self.dim - 1])

    def vector_gamma(self, vector: Any) -> ArrayT:
        """Clifford action of a vector with upper components."""
        return np.einsum("a,aij->ij", np.asarray(vector, dtype=np.complex128), self.gamma)

    def inner(self, u: Any, v: Any) -> complex:
        return complex(np.asarray(u) @ self.g @ np.asarray(v))

    def bilinear(self, xi: Any, eta: Any) -> complex:
        """Spin-invariant pairing of two full spinors."""
        return complex(np.asarray(xi) @ self.bilinear_form @ np.asarray(eta))

    def chiral_pairing(self, left: Chirality | int, right: Chirality | int) -> ArrayT:
        """Block of the pairing between chiral components."""
        return self.bilinear_form[np.ix_(self.masks(left), self.masks(right))]

    def spin_action(self, phi: Any) -> ArrayT:
        """
        Spinor action ``-1/4 phi_ab gamma^ab`` of a skew ``phi_ab`` on the full spinor space.
        """
        phi = np.asarray(phi, dtype=np.complex128)
        return 0.25 * np.einsum("ab,aij,bjk->ik", phi, self.gamma_up, self.gamma_up)

    def vector_action(self, phi: Any) -> ArrayT:
        """Matrix of ``phi`` on upper vector components, matched to :meth:`spin_action`."""
        return -self.ginv @ np.asarray(phi, dtype=np.complex128)

    def orientation_element(self) -> ArrayT:
        """
        Clifford volume of the orthonormal frame ``e_i + f_i, i(e_i - f_i)``, scaled to square to one.
        """
        result = np.eye(self.dim, dtype=np.complex128)
        for i in range(self.m):
            u = self.gamma[i] + self.gamma[self.m + i]
            v = 1j * (self.gamma[i] - self.gamma[self.m + i])
            result = result @ u @ v
        return result / (1j**self.m)


@cache
def _cached_model(m: int, tol: ToleranceContext) -> CliffordModel:
    return CliffordModel(m, tol)


def build_model(m: int, tol: ToleranceContext | None = None) -> CliffordModel:
    """
    Cached :class:`CliffordModel` for ``2 <= m <= 6``.

    :raises UnsupportedDimension: ``m`` is outside the supported range
    """
    if not isinstance(m, int) or not MIN_M <= m <= MAX_M:
        raise UnsupportedDimension(f"m must lie in {MIN_M}..{MAX_M}; got {m!r}")
    return _cached_model(m, tol or DEFAULT_TOLERANCE)


def ordered_product(model: CliffordModel, indices: Any) -> ArrayT:
    """``Gamma_{a_p} ... Gamma_{a_1}`` for the index sequence ``a_1 .. a_p``."""
    result = np.eye(model.dim, dtype=np.complex128)
    for index in indices:
        result = model.gamma[index] @ result
    return result


def gamma_multi(model: CliffordModel, indices: Any) -> ArrayT:
    """
    Weight-one antisymmetrized gamma product ``gamma_{a_1 .. a_p}`` on the full spinor space.

    >>> import numpy as np
    >>> model = build_model(2)
    >>> bool(np.allclose(gamma_multi(model, [0, 0]), 0))
    True
    """
    indices = list(indices)
    if any(not 0 <= a < model.n for a in indices):
        raise IndexError(f"vector indices must lie in 0..{model.n - 1}")
    p = len(indices)
    total = np.zeros((model.dim, model.dim), dtype=np.complex128)
    for perm, sign in permutation_signs(p):
        total += sign * ordered_product(model, [indices[k] for k in perm])
    return total / factorial(p)


def wedge_product(model: CliffordModel, vectors: Any) -> ArrayT:
    """Antisymmetrized gamma product of vectors given by upper components."""
    mats = [model.vector_gamma(v) for v in vectors]
    p = len(mats)
    total = np.zeros((model.dim, model.dim), dtype=np.complex128)
    for perm, sign in permutation_signs(p):
        product = np.eye(model.dim, dtype=np.complex128)
        for k in perm:
            product = mats[k] @ product
        total += sign * product
    return total / factorial(p)


def gamma_chain(model: CliffordModel, spinor: Any, p: int) -> ArrayT:
    """Array ``X[a_1, ..., a_p, :] = Gamma_{a_p} ... Gamma_{a_1} spinor`` (not antisymmetrized)."""
    chain = np.asarray(spinor, dtype=np.complex128)
    for _ in range(p):
        chain = np.einsum("aij,...j->...ai", model.gamma, chain)
    return chain


def pform_bilinear(model: CliffordModel, p: int, xi: Any, eta: Any) -> ArrayT:
    """
    Components ``gamma_{a_1 .. a_p}(xi, eta) = B(gamma_{a_1 .. a_p} xi, eta)`` of full spinors.
    """
    chain = gamma_chain(model, xi, p)
    values = np.einsum("...i,ij,j->...", chain, model.bilinear_form, np.asarray(eta, dtype=np.complex128))
    return skew(values, list(range(p))) if p > 1 else values


def _complement(subset: tuple[int, ...], n: int) -> tuple[int, ...]:
    return tuple(a for a in range(n) if a not in subset)


@cache
def _hodge_tables(m: int, p: int) -> tuple[tuple[tuple[int, ...], ...], tuple[tuple[int, ...], ...], ArrayT]:
    model = build_model(m)
    n = model.n
    rows = tuple(combinations(range(n), p))
    cols = tuple(combinations(range(n), n - p))
    minors = np.array([[np.linalg.det(model.ginv[np.ix_(a, b)]) if p else 1.0 for b in rows] for a in rows])
    signs = np.zeros((len(cols), len(rows)), dtype=np.complex128)
    index = {subset: k for k, subset in enumerate(cols)}
    for k, subset in enumerate(rows):
        rest = _complement(subset, n)
        signs[index[rest], k] = permutation_sign(subset + rest)
    matrix = model.volume_coefficient * signs @ minors
    return rows, cols, _frozen(matrix)


def hodge_matrix(model: CliffordModel, p: int) -> ArrayT:
    """
    Hodge star from lower p-forms to lower (n-p)-forms on sorted-index components.

    Rows and columns follow :func:`itertools.combinations` order.
    """
    if not 0 <= p <= model.n:
        raise ValueError(f"form degree must lie in 0..{model.n}; got {p}")
    return _hodge_tables(model.m, p)[2]


def _check_form(model: CliffordModel, form: ArrayT) -> None:
    if any(extent != model.n for extent in form.shape):
        raise NotSkew(f"form indices must all have extent {model.n}")
    if form.ndim > 1:
        scale = float(np.linalg.norm(form))
        if not model.tol.vanishes(float(np.linalg.norm(form - skew(form, list(range(form.ndim))))), scale):
            raise NotSkew("form is not totally skew")


def compress_form(form: Any) -> ArrayT:
    """Sorted-index components of a totally skew array."""
    form = np.asarray(form, dtype=np.complex128)
    n = form.shape[0] if form.ndim else 0
    return np.array([form[subset] for subset in combinations(range(n), form.ndim)], dtype=np.complex128)


def expand_form(values: Any, n: int, p: int) -> ArrayT:
    """Totally skew array from sorted-index components."""
    out = np.zeros((n,) * p, dtype=np.complex128)
    for value, subset in zip(values, combinations(range(n), p)):
        for perm, sign in permutation_signs(p):
            out[tuple(subset[k] for k in perm)] = sign * value
    return out


def hodge_star(model: CliffordModel, form: DenseTensor | Any) -> ArrayT:
    """
    Hodge star of a totally skew lower form.

    :raises NotSkew: the input is not totally skew
    :raises UnsupportedDimension: the dense result would be too large
    """
    array = form.components if isinstance(form, DenseTensor) else np.asarray(form, dtype=np.complex128)
    _check_form(model, array)
    p = array.ndim
    if model.n ** (model.n - p) > MAX_DENSE_ENTRIES:
        raise UnsupportedDimension(f"a dense {model.n - p}-form in dimension {model.n} is too large; use hodge_matrix")
    values = hodge_matrix(model, p) @ compress_form(array) if p else hodge_matrix(model, 0)[:, 0] * complex(array)
    return expand_form(values, model.n, model.n - p)


def self_dual_eigenvalue(model: CliffordModel) -> complex:
    """Eigenvalue of the Hodge star on self-dual m-forms."""
    return 1.0 if model.m % 2 == 0 else 1j


def self_dual_projector(model: CliffordModel, anti: bool = False) -> ArrayT:
    """Projector onto (anti-)self-dual m-forms on sorted-index components."""
    star = hodge_matrix(model, model.m)
    value = self_dual_eigenvalue(model) * (-1 if anti else 1)
    return 0.5 * (np.eye(comb(model.n, model.m)) + star / value)


def clifford_residual(model: CliffordModel) -> float:
    """Largest entry of ``gamma_(a gamma_b) + g_ab`` over all index pairs."""
    anti = np.einsum("aij,bjk->abik", model.gamma, model.gamma)
    anti = 0.5 * (anti + anti.transpose(1, 0, 2, 3))
    anti += np.einsum("ab,ik->abik", model.g, np.eye(model.dim))
    return float(np.max(np.abs(anti)))


def _spinor_pair_for_identity(model: CliffordModel, p: int, rng: np.random.Generator) -> tuple[ArrayT, ArrayT]:
    def random_half() -> ArrayT:
        return rng.normal(size=model.half) + 1j * rng.normal(size=model.half)

    x = model.embed(random_half(), Chirality.PLUS)
    z = model.embed(random_half(), Chirality.PLUS if (model.m - p) % 2 == 0 else Chirality.MINUS)
    return x, z


def gamma_identity_residuals(model: CliffordModel, p: int, seed: int | None = None) -> tuple[float, float]:
    """
    Relative residuals of the sandwich identity ``gamma_a gamma_{b_1..b_p} gamma_c`` and of its trace.

    All vector slots are contracted with random vectors. The last correction
    term carries the coefficient ``-p(p-1)``.
    """
    rng = np.random.default_rng(seed)
    x, z = _spinor_pair_for_identity(model, p, rng)

    def vec() -> ArrayT:
        return rng.normal(size=model.n) + 1j * rng.normal(size=model.n)

    a, c = vec(), vec()
    bs = [vec() for _ in range(p)]

    def pair(vectors: list[ArrayT]) -> complex:
        return model.bilinear(wedge_product(model, vectors) @ x, z) if vectors else model.bilinear(x, z)

    lhs = model.bilinear(wedge_product(model, bs) @ model.vector_gamma(a) @ x, model.vector_gamma(c) @ z)
    rhs = pair([c, a, *bs]) + model.inner(c, a) * pair(bs)
    for k in range(p):
        rest = bs[:k] + bs[k + 1 :]
        sign = -1 if k % 2 else 1
        rhs -= sign * (model.inner(bs[k], a) * pair([c, *rest]) + model.inner(bs[k], c) * pair([a, *rest]))
    for k in range(p):
        for j in range(p):
            if j == k:
                continue
            rest_idx = [i for i in range(p) if i not in (k, j)]
            sign = permutation_sign([k, j, *rest_idx])
            rhs -= sign * model.inner(a, bs[k]) * model.inner(c, bs[j]) * pair([bs[i] for i in rest_idx])
    rhs *= (-1) ** p
    scale = max(abs(lhs), abs(rhs), 1.0)

    multi = wedge_product(model, bs) if bs else np.eye(model.dim)
    trace = sum(
        model.bilinear(multi @ model.gamma_up[e] @ x, model.gamma[e] @ z) for e in range(model.n)
    )
    expected = (-1) ** p * 2 * (model.m - p) * model.bilinear(multi @ x, z)
    trace_scale = max(abs(trace), abs(expected), 1.0)
    return abs(lhs - rhs) / scale, abs(trace - expected) / trace_scale
