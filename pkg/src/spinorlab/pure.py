"""
Pure spinors, their annihilating planes, dual pairs and spinor filtrations.
"""

from __future__ import annotations

from functools import cached_property
from fractions import Fraction
from itertools import combinations
from logging import Logger, getLogger
from typing import Any

import numpy as np

from spinorlab.clifford import CliffordModel
from spinorlab.definitions import ArrayT, Chirality, Dictionary
from spinorlab.exceptions import DegenerateDual, ExtentMismatch, InconsistentVerdict, NotPure, ZeroSpinor
from spinorlab.tensor import contains, intersect, kernel, numerical_rank, span_basis

logger: Logger = getLogger(__name__)

DUAL_PAIR_ATTEMPTS = 8


def orthonormal_frame(model: CliffordModel) -> ArrayT:
    """Columns ``e_i + f_i`` and ``i(e_i - f_i)``; distinct members anticommute under Clifford action."""
    frame = np.zeros((model.n, model.n), dtype=np.complex128)
    for i in range(model.m):
        frame[i, 2 * i] = frame[model.m + i, 2 * i] = 1.0
        frame[i, 2 * i + 1] = 1j
        frame[model.m + i, 2 * i + 1] = -1j
    return frame


def orthonormal_pform(model: CliffordModel, p: int, xi: Any, eta: Any) -> ArrayT:
    """
    Sorted orthonormal-frame components of ``gamma_{a_1..a_p}(xi, eta)`` for full spinors.

    Vanishing of this vector is equivalent to vanishing of
    :func:`~spinorlab.clifford.pform_bilinear` and costs only ``C(2m, p)`` chains.
    """
    frame = orthonormal_frame(model)
    mats = np.einsum("ak,aij->kij", frame, model.gamma)
    xi = np.asarray(xi, dtype=np.complex128)
    paired = model.bilinear_form @ np.asarray(eta, dtype=np.complex128)
    values = []
    for subset in combinations(range(model.n), p):
        chain = xi
        for k in subset:
            chain = mats[k] @ chain
        values.append(chain @ paired)
    return np.array(values, dtype=np.complex128)


def _as_half(model: CliffordModel, chi: Any, chirality: Chirality) -> ArrayT:
    if isinstance(chi, PureSpinor):
        return chi.components
    array = np.asarray(chi, dtype=np.complex128).ravel()
    if array.shape != (model.half,):
        raise ExtentMismatch(f"chiral spinor for m={model.m} needs {model.half} components; got {array.shape[0]}")
    return array


def is_pure(model: CliffordModel, chi: Any, chirality: Chirality | int = Chirality.PLUS) -> Dictionary:
    """
    Purity report of a chiral spinor from three independent tests.

    The kernel test counts the annihilated vectors, the quadric test evaluates
    ``chi^{aA} chi_a^B`` and the Cartan test evaluates the bilinears
    ``gamma_p(chi, chi)`` for ``p < m`` with ``m - p`` divisible by four.

    :raises ZeroSpinor: ``chi`` vanishes
    :raises InconsistentVerdict: the three tests disagree
    """
    chirality = Chirality(chirality)
    chi = _as_half(model, chi, chirality)
    tol = model.tol
    scale = float(np.linalg.norm(chi))
    if tol.vanishes(scale):
        raise ZeroSpinor("spinor is zero")
    chi = chi / scale

    low = np.einsum("aij,j->ai", model.to_other(chirality), chi)
    kernel_dim = model.n - numerical_rank(low.T, tol)
    quadric = np.einsum("ai,ab,bj->ij", low, model.ginv, low)
    quadric_residual = float(np.linalg.norm(quadric))

    full = model.embed(chi, chirality)
    cartan = {
        p: float(np.linalg.norm(orthonormal_pform(model, p, full, full)))
        for p in range(model.m)
        if (model.m - p) % 4 == 0
    }
    top = float(np.linalg.norm(orthonormal_pform(model, model.m, full, full)))

    verdicts = {
        "kernel": kernel_dim == model.m,
        "quadric": tol.vanishes(quadric_residual, 1.0),
        "cartan": all(tol.vanishes(r, 1.0) for r in cartan.values()) and not tol.vanishes(top, 1.0),
    }
    if len(set(verdicts.values())) != 1:
        raise InconsistentVerdict(f"purity tests disagree: {verdicts}")
    logger.debug("Purity verdict %s (kernel dim %d)", verdicts["kernel"], kernel_dim)
    return Dictionary(
        pure=verdicts["kernel"],
        kernel_dim=kernel_dim,
        quadric_residual=quadric_residual,
        cartan_residuals=cartan,
        top_norm=top,
    )


class PureSpinor:
    """
    Chiral pure spinor with cached derived arrays.

    Index conventions of the derived arrays, with ``P`` the spinor's own
    chirality and ``A`` the opposite one:

    ``xi_low[a, A]``
        ``xi_a^A``
    ``xi_up[a, A]``
        ``xi^{aA}``
    ``xi2_up[a, b, P]``
        ``xi^{abP}``
    ``gam[e, P, A]``
        ``gamma_{eP}^A``

    :raises NotPure: the spinor is not pure
    """

    def __init__(self, model: CliffordModel, components: Any, chirality: Chirality | int = Chirality.PLUS):
        self.model = model
        self.chirality = Chirality(chirality)
        self.components: ArrayT = _as_half(model, components, self.chirality).copy()
        self.components.setflags(write=False)
        self.report = is_pure(model, self.components, self.chirality)
        if not self.report.pure:
            raise NotPure(f"spinor annihilates a {self.report.kernel_dim}-plane; pure spinors annihilate {model.m}")

    @classmethod
    def canonical(cls, model: CliffordModel) -> PureSpinor:
        return cls(model, model.canonical_spinor())

    def __repr__(self) -> str:
        return f"PureSpinor(m={self.model.m}, chirality={self.chirality.sign})"

    @property
    def full(self) -> ArrayT:
        return self.model.embed(self.components, self.chirality)

    @cached_property
    def xi_low(self) -> ArrayT:
        return np.einsum("aij,j->ai", self.model.to_other(self.chirality), self.components)

    @cached_property
    def xi_up(self) -> ArrayT:
        return self.model.ginv @ self.xi_low

    @cached_property
    def xi2_low(self) -> ArrayT:
        chain = np.einsum("bij,ajk,k->abi", self.model.to_same(self.chirality), self.model.to_other(self.chirality), self.components)
        return 0.5 * (chain - chain.transpose(1, 0, 2))

    @cached_property
    def xi2_up(self) -> ArrayT:
        return np.einsum("ac,bd,cdi->abi", self.model.ginv, self.model.ginv, self.xi2_low)

    @cached_property
    def gam(self) -> ArrayT:
        return np.transpose(self.model.to_other(self.chirality), (0, 2, 1))

    @cached_property
    def gam_up(self) -> ArrayT:
        return np.einsum("ab,bij->aij", self.model.ginv, self.gam)

    @cached_property
    def annihilator(self) -> ArrayT:
        """Orthonormal basis (columns) of the annihilated totally null m-plane."""
        return kernel(self.xi_low.T, self.model.tol)

    def scaled(self, factor: complex) -> PureSpinor:
        return PureSpinor(self.model, factor * self.components, self.chirality)


def annihilator(model: CliffordModel, xi: Any, chirality: Chirality | int = Chirality.PLUS) -> ArrayT:
    """
    Basis of the m-plane of vectors ``V`` with ``V . xi = 0``.

    :raises NotPure: ``xi`` is not pure
    """
    spinor = xi if isinstance(xi, PureSpinor) else PureSpinor(model, xi, chirality)
    return spinor.annihilator


class DualPair:
    """
    Pure spinor with a dual pure spinor ``eta`` normalized to ``eta(xi) = -1/2``.

    The pair splits the vector space into the annihilator ``V_{1/2}`` of
    ``xi`` (columns of :attr:`e_basis`) and the totally null complement
    ``V_{-1/2}`` (columns of :attr:`f_basis`) with ``g(e_i, f_j) = delta_ij / 2``.
    The legs ``X[:, k] = 2 g e_k`` and ``Y[:, k] = g f_k`` give adapted
    coordinates in which the graded representatives are written.
    """

    def __init__(self, xi: PureSpinor, e_basis: ArrayT, f_basis: ArrayT, eta: ArrayT):
        self.xi = xi
        self.model = xi.model
        self.e_basis = e_basis
        self.f_basis = f_basis
        self.eta = eta

    def __repr__(self) -> str:
        return f"DualPair(m={self.model.m})"

    @cached_property
    def X(self) -> ArrayT:  # noqa: N802
        return 2 * self.model.g @ self.e_basis

    @cached_property
    def Y(self) -> ArrayT:  # noqa: N802
        return self.model.g @ self.f_basis

    @cached_property
    def s(self) -> ArrayT:
        """Columns ``f_k . xi`` spanning the image of ``xi_a^A``."""
        other = self.model.to_other(self.xi.chirality)
        return np.stack([np.einsum("a,aij,j->i", f, other, self.xi.components) for f in self.f_basis.T], axis=1)

    @cached_property
    def t(self) -> ArrayT:
        """Rows ``2 eta(e_k . )`` dual to :attr:`s`."""
        same = self.model.to_same(self.xi.chirality)
        return np.stack([2 * self.eta @ np.einsum("a,aij->ij", e, same) for e in self.e_basis.T], axis=0)

    @cached_property
    def eta_low(self) -> ArrayT:
        """``eta_{aA}``."""
        return np.einsum("p,apq->aq", self.eta, self.model.to_same(self.xi.chirality))

    @cached_property
    def idempotent(self) -> ArrayT:
        """``I_B^A = eta_{aB} xi^{aA}`` as a matrix acting on upper components."""
        return np.einsum("aA,aB->AB", self.xi.xi_up, self.eta_low)

    @cached_property
    def omega(self) -> ArrayT:
        return self.X @ self.Y.T - self.Y @ self.X.T

    @cached_property
    def grading_element(self) -> ArrayT:
        return -0.5 * self.omega

    def swapped(self) -> tuple[ArrayT, ArrayT]:
        """Legs with the roles of ``xi`` and ``eta`` interchanged."""
        return 2 * self.Y, 0.5 * self.X


def _null_complement(model: CliffordModel, e_basis: ArrayT, rng: np.random.Generator) -> ArrayT:
    w = rng.normal(size=(model.n, model.m)) + 1j * rng.normal(size=(model.n, model.m))
    pairing = e_basis.T @ model.g @ w
    if numerical_rank(pairing, model.tol) < model.m:
        raise DegenerateDual("random complement is not transverse to the annihilator")
    w = w @ (0.5 * np.linalg.inv(pairing))
    gram = w.T @ model.g @ w
    return w - e_basis @ gram.T


def make_dual_pair(model: CliffordModel, xi: Any, seed: int | None = None) -> DualPair:
    """
    Dual pair for a pure spinor with a seeded random transverse plane.

    :raises NotPure: ``xi`` is not pure
    :raises DegenerateDual: no transverse dual was found
    """
    spinor = xi if isinstance(xi, PureSpinor) else PureSpinor(model, xi)
    rng = np.random.default_rng(seed)
    e_basis = spinor.annihilator
    same = model.to_same(spinor.chirality)
    for attempt in range(DUAL_PAIR_ATTEMPTS):
        try:
            f_basis = _null_complement(model, e_basis, rng)
        except DegenerateDual:
            logger.debug("Dual pair attempt %d: degenerate complement", attempt)
            continue
        images = np.hstack([np.einsum("a,aij->ij", f, same) for f in f_basis.T])
        annihilating = kernel(images.T, model.tol)
        if annihilating.shape[1] != 1:
            raise InconsistentVerdict(f"dual spinor space has dimension {annihilating.shape[1]}; expected 1")
        eta = annihilating[:, 0]
        pairing = complex(eta @ spinor.components)
        if model.tol.vanishes(abs(pairing), float(np.linalg.norm(spinor.components))):
            logger.debug("Dual pair attempt %d: eta(xi) vanishes", attempt)
            continue
        eta = -0.5 * eta / pairing
        return DualPair(spinor, e_basis, f_basis, eta)
    raise DegenerateDual(f"no transverse dual after {DUAL_PAIR_ATTEMPTS} attempts")


def intersection_dim(model: CliffordModel, alpha: PureSpinor, beta: PureSpinor) -> int:
    """
    Dimension of the intersection of the annihilating planes of two pure spinors.

    Read off as the least ``p`` with ``gamma_p(alpha, beta) != 0`` and checked
    against direct subspace intersection.

    :raises InconsistentVerdict: the two computations disagree
    """
    oracle = intersect(alpha.annihilator, beta.annihilator, model.tol).shape[1]
    a = alpha.full / np.linalg.norm(alpha.full)
    b = beta.full / np.linalg.norm(beta.full)
    claim = next(
        (p for p in range(model.m + 1) if not model.tol.vanishes(float(np.linalg.norm(orthonormal_pform(model, p, a, b))), 1.0)),
        None,
    )
    if claim != oracle:
        raise InconsistentVerdict(f"bilinear pattern gives {claim}, subspace intersection gives {oracle}")
    return oracle


def filtration_spans(spinor: PureSpinor, depth: int | None = None) -> list[ArrayT]:
    """Full-space bases of the images of ``xi`` under gamma products of degree ``0, 1, ..., depth``."""
    model = spinor.model
    depth = model.m if depth is None else depth
    spans = [span_basis(spinor.full[:, None], model.tol)]
    for _ in range(depth):
        images = np.einsum("aij,jk->iak", model.gamma, spans[-1]).reshape(model.dim, -1)
        spans.append(span_basis(images, model.tol))
    return spans


def spinor_filtration_level(
    model: CliffordModel, chi: Any, xi: PureSpinor, chirality: Chirality | int | None = None
) -> Dictionary:
    """
    Least ``k`` with ``chi`` in the image of a gamma product of degree ``2k`` (or ``2k+1``).

    The weight is ``(m - 4k)/4`` for the chirality of ``xi`` and ``(m - 4k - 2)/4`` otherwise.
    """
    chirality = xi.chirality if chirality is None else Chirality(chirality)
    full = model.embed(chi, chirality)
    if model.tol.vanishes(float(np.linalg.norm(full))):
        raise ZeroSpinor("spinor is zero")
    odd = chirality is not xi.chirality
    spans = filtration_spans(xi)
    for degree in range(1 if odd else 0, len(spans), 2):
        if contains(spans[degree], full, model.tol):
            k = degree // 2
            weight = Fraction(model.m - 4 * k - (2 if odd else 0), 4)
            return Dictionary(k=k, degree=degree, weight=weight)
    raise InconsistentVerdict("spinor lies in no filtration stage")
