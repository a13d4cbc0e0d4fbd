"""
Two-spinor calculus in four dimensions and the ``sl(4)`` calculus in six.

In four dimensions ``S+`` carries primed indices and ``S-`` unprimed ones;
``epsilon_{A'B'}`` and ``epsilon_{AB}`` are the pairing restricted to each
half and ``gamma_{aAA'}`` solders vectors to pairs of spinors. The Weyl
tensor splits into totally symmetric spinors ``Psi_{A'B'C'D'}`` and
``Psi_{ABCD}`` whose principal spinors give the Petrov type.

In six dimensions ``S = S-`` carries upper indices and ``S+`` is identified
with the dual ``S*`` through the pairing, so a positive pure spinor becomes
a covector ``xi_A``. Vectors are skew pairs ``V_[AB]`` and the projection
maps of every diagram become short index expressions.
"""

from __future__ import annotations

from collections.abc import Callable
from fractions import Fraction
from functools import cached_property
from itertools import product
from logging import Logger, getLogger
from math import prod
from typing import Any

import numpy as np

from spinorlab.classification import classify, module_dims
from spinorlab.clifford import CliffordModel, build_model, compress_form, self_dual_projector
from spinorlab.curvature import check_cotton, check_ricci, check_weyl, project_to_weyl
from spinorlab.definitions import ArrayT, Chirality, Dictionary, Space, cell_name, format_level
from spinorlab.exceptions import BadComponentSymmetry, ExtentMismatch, InconsistentVerdict, UnsupportedDimension
from spinorlab.geometry import framed_curvature
from spinorlab.parabolic import ZERO_LEVEL, as_array, ein
from spinorlab.pure import PureSpinor
from spinorlab.tensor import kernel, skew, span_basis, sym
from spinorlab.torsion import CONDITIONS, check_connection, classify_torsion, covariant_derivative_spinor

logger: Logger = getLogger(__name__)

#: Chordal distance below which two refined principal spinors are the same point.
ROOT_MERGE_DISTANCE = 1e-6
#: Relative size below which a derivative of the Weyl quartic counts as zero at a root.
ROOT_RESIDUAL = 1e-8

PETROV_TYPES = {
    (1, 1, 1, 1): "{1111}",
    (2, 1, 1): "{211}",
    (2, 2): "{22}",
    (3, 1): "{31}",
    (4,): "{4}",
    (): "{-}",
}
PENROSE_NAMES = {"{1111}": "I", "{211}": "II", "{22}": "D", "{31}": "III", "{4}": "N", "{-}": "O"}


def _require_m(model: CliffordModel | None, m: int) -> CliffordModel:
    model = model or build_model(m)
    if model.m != m:
        raise UnsupportedDimension(f"this calculus needs m={m}; got m={model.m}")
    return model


def _residual(value: ArrayT, scale: float) -> float:
    return float(np.linalg.norm(value)) / scale if scale else float(np.linalg.norm(value))


def _spinor_components(model: CliffordModel, xi: Any) -> ArrayT:
    components = as_array(xi).ravel()
    if components.shape != (model.half,):
        raise ExtentMismatch(f"expected {model.half} positive spinor components; got {components.shape[0]}")
    return components


class TwoSpinorModel:
    """
    Spinor forms of the four-dimensional model.

    ``epsilon_minus`` is scaled so that ``g^ab gamma_aAA' gamma_bBB' = 2 epsilon_{A'B'} epsilon_{AB}``.

    :Usage:
        >>> from spinorlab.lowdim import TwoSpinorModel
        >>> TwoSpinorModel().identity_residual() < 1e-10
        True
    """

    def __init__(self, model: CliffordModel | None = None):
        self.model = _require_m(model, 2)
        model = self.model
        self.eps_plus: ArrayT = model.chiral_pairing(Chirality.PLUS, Chirality.PLUS)
        pairing = model.chiral_pairing(Chirality.MINUS, Chirality.MINUS)
        #: ``gamma_{aAA'}``
        self.gamma: ArrayT = ein("AB,aBP->aAP", pairing, model.gpm)
        self.gamma_vup: ArrayT = ein("ab,bAP->aAP", model.ginv, self.gamma)
        lhs = self._metric_product()
        raw = 2 * ein("PQ,AB->APBQ", self.eps_plus, pairing)
        kappa = complex(np.vdot(raw.ravel(), lhs.ravel()) / np.vdot(raw.ravel(), raw.ravel()))
        self.eps_minus: ArrayT = kappa * pairing
        self.eps_plus_up: ArrayT = np.linalg.inv(self.eps_plus).T
        self.eps_minus_up: ArrayT = np.linalg.inv(self.eps_minus).T

    def __repr__(self) -> str:
        return "TwoSpinorModel()"

    def _metric_product(self) -> ArrayT:
        return ein("aAP,aBQ->APBQ", self.gamma_vup, self.gamma)

    def identity_residual(self) -> float:
        """Relative failure of the soldering identity."""
        lhs = self._metric_product()
        rhs = 2 * ein("PQ,AB->APBQ", self.eps_plus, self.eps_minus)
        return _residual(lhs - rhs, float(np.linalg.norm(lhs)))

    @cached_property
    def soldering(self) -> ArrayT:
        """``sigma_a^{AA'} = gamma_a^{AA'} / sqrt(2)`` with both spinor indices raised."""
        raised = ein("AB,PQ,aBQ->aAP", self.eps_minus_up, self.eps_plus_up, self.gamma)
        return raised / np.sqrt(2)

    def to_spinor(self, vector: Any) -> ArrayT:
        """``V^{AA'}`` of a vector with upper components."""
        return ein("a,aAP->AP", as_array(vector), self.soldering)

    def lower(self, spinor: Any, chirality: Chirality | int = Chirality.PLUS) -> ArrayT:
        """``alpha_B = alpha^A epsilon_AB``."""
        eps = self.eps_plus if Chirality(chirality) is Chirality.PLUS else self.eps_minus
        return as_array(spinor) @ eps

    def weyl_to_spinor(self, weyl: Any) -> tuple[ArrayT, ArrayT]:
        """
        ``(Psi_{A'B'C'D'}, Psi_{ABCD})`` of a Weyl tensor.

        :raises SymmetryViolation: the input is not a Weyl tensor
        """
        c = check_weyl(self.model, weyl)
        g = self.gamma_vup
        plus = 0.25 * ein("abcd,aAP,bBQ,cCR,dDS,AB,CD->PQRS", c, g, g, g, g, self.eps_minus_up, self.eps_minus_up)
        minus = 0.25 * ein("abcd,aAP,bBQ,cCR,dDS,PQ,RS->ABCD", c, g, g, g, g, self.eps_plus_up, self.eps_plus_up)
        return plus, minus

    @cached_property
    def weyl_basis(self) -> ArrayT:
        n = self.model.n
        images = [project_to_weyl(self.model, unit.reshape((n,) * 4)).ravel() for unit in np.eye(n**4)]
        return span_basis(np.stack(images, axis=1), self.model.tol)

    @cached_property
    def _weyl_images(self) -> ArrayT:
        n = self.model.n
        columns = []
        for column in self.weyl_basis.T:
            plus, minus = self.weyl_to_spinor(column.reshape((n,) * 4))
            columns.append(np.concatenate([plus.ravel(), minus.ravel()]))
        return np.stack(columns, axis=1)

    def spinor_to_weyl(self, psi_plus: Any = None, psi_minus: Any = None) -> ArrayT:
        """
        Weyl tensor with the given spinor parts; a missing part is zero.

        :raises BadComponentSymmetry: a part is not totally symmetric
        """
        parts = []
        for psi in (psi_plus, psi_minus):
            psi = np.zeros((2,) * 4, dtype=np.complex128) if psi is None else as_array(psi)
            if psi.shape != (2,) * 4:
                raise ExtentMismatch(f"Weyl spinors have shape (2, 2, 2, 2); got {psi.shape}")
            scale = float(np.linalg.norm(psi))
            if not self.model.tol.vanishes(float(np.linalg.norm(psi - sym(psi, [0, 1, 2, 3]))), scale):
                raise BadComponentSymmetry("Weyl spinor is not totally symmetric")
            parts.append(psi.ravel())
        target = np.concatenate(parts)
        coefficients, *_ = np.linalg.lstsq(self._weyl_images, target, rcond=None)
        return (self.weyl_basis @ coefficients).reshape((self.model.n,) * 4)

    def self_duality(self, weyl: Any) -> Dictionary:
        """Norms of the self-dual and anti-self-dual parts of a Weyl tensor in its first pair."""
        c = check_weyl(self.model, weyl)
        n = self.model.n
        columns = np.stack([compress_form(c[:, :, i, j]) for i in range(n) for j in range(n)], axis=1)
        parts = {}
        for name, anti in (("self_dual", False), ("anti_self_dual", True)):
            parts[name] = float(np.linalg.norm(self_dual_projector(self.model, anti) @ columns))
        return Dictionary(parts, norm=float(np.linalg.norm(c)))


def _chordal(z: complex, w: complex) -> float:
    if np.isinf(z) and np.isinf(w):
        return 0.0
    if np.isinf(z) or np.isinf(w):
        finite = w if np.isinf(z) else z
        return float(1 / np.sqrt(1 + abs(finite) ** 2))
    return float(abs(z - w) / np.sqrt((1 + abs(z) ** 2) * (1 + abs(w) ** 2)))


def _quartic(psi: ArrayT) -> ArrayT:
    """Coefficients, highest power first, of ``Psi(pi, pi, pi, pi)`` with ``pi = (1, z)``."""
    coefficients = np.zeros(5, dtype=np.complex128)
    for index in product((0, 1), repeat=4):
        coefficients[4 - sum(index)] += psi[index]
    return coefficients


def _finite_roots(poly: ArrayT) -> list[tuple[complex, int]]:
    """
    Roots with multiplicities.

    A k-fold root is a simple root of the (k-1)-th derivative; each one found
    is divided out before looking further.
    """
    degree = len(poly) - 1
    size = float(np.abs(poly).sum())
    found: list[tuple[complex, int]] = []
    for k in range(degree, 1, -1):
        searching = True
        while searching and len(poly) > k:
            searching = False
            for root in np.roots(np.polyder(poly, k - 1)):
                bound = ROOT_RESIDUAL * size * max(1.0, abs(root)) ** degree
                if all(abs(np.polyval(np.polyder(poly, j) if j else poly, root)) <= bound for j in range(k - 1)):
                    found.append((complex(root), k))
                    poly = np.polydiv(poly, np.poly([root] * k))[0]
                    searching = True
                    break
    found.extend((complex(root), 1) for root in (np.roots(poly) if len(poly) > 1 else []))
    merged: list[tuple[complex, int]] = []
    for root, k in found:
        for position, (other, count) in enumerate(merged):
            if _chordal(root, other) < ROOT_MERGE_DISTANCE:
                merged[position] = (other, count + k)
                break
        else:
            merged.append((root, k))
    return merged


def principal_spinors(psi: Any, tol: Any = None) -> Dictionary:
    """
    Principal spinors of a totally symmetric ``Psi_{A'B'C'D'}`` with multiplicities.

    Repeated roots of the quartic are located as simple roots of its
    derivatives; roots closer than ``ROOT_MERGE_DISTANCE`` in chordal distance
    are merged. A root at infinity is the spinor ``(0, 1)``.
    """
    psi = as_array(psi)
    tol = tol or build_model(2).tol
    scale = float(np.linalg.norm(psi))
    if tol.vanishes(scale):
        return Dictionary(type="{-}", penrose="O", roots=[], multiplicities=[])
    coefficients = _quartic(psi)
    at_infinity = 0
    while at_infinity < 4 and tol.vanishes(abs(coefficients[at_infinity]), scale):
        at_infinity += 1
    roots: list[tuple[complex, int]] = [(complex(np.inf), at_infinity)] if at_infinity else []
    roots.extend(_finite_roots(coefficients[at_infinity:]))
    roots.sort(key=lambda item: -item[1])
    multiplicities = tuple(k for _, k in roots)
    kind = PETROV_TYPES[multiplicities]
    spinors = [np.array([0, 1], dtype=np.complex128) if np.isinf(z) else np.array([1, z], dtype=np.complex128) for z, _ in roots]
    logger.debug("Principal spinor multiplicities %s give type %s", multiplicities, kind)
    return Dictionary(type=kind, penrose=PENROSE_NAMES[kind], roots=spinors, multiplicities=list(multiplicities))


def root_multiplicity(psi: Any, xi: Any, tol: Any = None) -> int:
    """Multiplicity of ``xi`` as a principal spinor; four when ``Psi`` vanishes."""
    psi = as_array(psi)
    xi = as_array(xi).ravel()
    xi = xi / np.linalg.norm(xi)
    tol = tol or build_model(2).tol
    scale = float(np.linalg.norm(psi))
    contracted = psi
    vanishing = []
    for _ in range(4):
        contracted = np.tensordot(contracted, xi, axes=([contracted.ndim - 1], [0]))
        vanishing.append(tol.vanishes(float(np.linalg.norm(contracted)), scale))
    # xi is a k-fold root when the contraction with 5 - k copies vanishes
    return max((k for k in range(1, 5) if vanishing[4 - k]), default=0)


def petrov_type(psi: Any, xi: Any = None, model: TwoSpinorModel | None = None) -> Dictionary:
    """
    Petrov type of ``Psi_{A'B'C'D'}``, and its level relative to ``xi`` when given.

    The level is the multiplicity of ``xi`` as a principal spinor minus two;
    it is checked against the filtration level of the Weyl tensor built from ``Psi``.

    :raises InconsistentVerdict: the two levels differ
    """
    two = model or TwoSpinorModel()
    psi = as_array(psi)
    report = principal_spinors(psi, two.model.tol)
    if xi is None:
        return report
    xi = _spinor_components(two.model, xi)
    if report.type == "{-}":
        level: Fraction | float = ZERO_LEVEL
    else:
        level = Fraction(root_multiplicity(psi, xi, two.model.tol) - 2)
    weyl = two.spinor_to_weyl(psi)
    generic = classify(Space.WEYL, weyl, PureSpinor(two.model, xi))
    if generic.level != level:
        raise InconsistentVerdict(
            f"principal spinor level {format_level(level)} but filtration level {generic.level_name}"
        )
    report.level = level
    report.level_name = format_level(level)
    return report


def petrov_at(metric: Any, point: Any, xi: Any = None) -> Dictionary:
    """
    Petrov types of a four-dimensional polynomial metric at a point, in its null frame.

    ``type`` refers to ``Psi_{A'B'C'D'}`` and ``anti_self_dual_type`` to ``Psi_{ABCD}``.
    """
    two = TwoSpinorModel()
    framed = framed_curvature(metric, point, model=two.model)
    plus, minus = two.weyl_to_spinor(framed.weyl)
    report = petrov_type(plus, xi, two)
    report.anti_self_dual_type = principal_spinors(minus, two.model.tol).type
    report.psi_plus = plus
    report.psi_minus = minus
    report.frame = framed.frame
    return report


ConstraintT = Callable[[ArrayT], list[ArrayT]]


def _constrained_basis(constraints: ConstraintT, shape: tuple[int, ...]) -> ArrayT:
    size = prod(shape)
    columns = [np.concatenate([r.ravel() for r in constraints(unit.reshape(shape))]) for unit in np.eye(size)]
    return kernel(np.stack(columns, axis=1))


def _weyl_spinor_constraints(c: ArrayT) -> list[ArrayT]:
    return [c - sym(c, [0, 1]), c - sym(c, [2, 3]), ein("ABAD->BD", c)]


def _ricci_spinor_constraints(phi: ArrayT) -> list[ArrayT]:
    return [phi - skew(phi, [0, 1]), phi - skew(phi, [2, 3]), skew(phi, [0, 1, 2])]


def _cotton_spinor_constraints(a: ArrayT) -> list[ArrayT]:
    return [a - skew(a, [0, 1]), skew(a, [0, 1, 2]), ein("ABCA->BC", a)]


class SixSpinorModel:
    """
    Spinor forms of the six-dimensional model.

    ``gamma_low[a, A, B]`` is ``gamma_{aAB}`` and ``gamma_up[a, A, B]`` is
    ``gamma_a^{AB}``, normalized so that ``gamma_{aAB} gamma_b^{AB} = 4 g_ab``.
    """

    def __init__(self, model: CliffordModel | None = None):
        self.model = _require_m(model, 3)
        model = self.model
        #: ``P[A', B]``, identifying ``S+`` with lower-index spinors
        self.pairing: ArrayT = model.chiral_pairing(Chirality.PLUS, Chirality.MINUS)
        self.gamma_low: ArrayT = ein("aPA,PB->aAB", model.gmp, self.pairing)
        raw_up = ein("aAP,PB->aAB", model.gpm, np.linalg.inv(self.pairing).T)
        kappa = complex(ein("ab,aAB,bAB->", model.ginv, self.gamma_low, raw_up)) / (4 * model.n)
        self.gamma_up: ArrayT = raw_up / kappa
        #: ``gamma^a_{AB}`` and ``gamma^{aAB}``
        self.gamma_low_vup: ArrayT = ein("ab,bAB->aAB", model.ginv, self.gamma_low)
        self.gamma_up_vup: ArrayT = ein("ab,bAB->aAB", model.ginv, self.gamma_up)
        self.eps_low: ArrayT = 0.5 * ein("aAB,aCD->ABCD", self.gamma_low_vup, self.gamma_low)
        self.eps_up: ArrayT = 0.5 * ein("aAB,aCD->ABCD", self.gamma_up_vup, self.gamma_up)

    def __repr__(self) -> str:
        return "SixSpinorModel()"

    def lower(self, xi: Any) -> ArrayT:
        """``xi_A`` of a positive spinor."""
        return _spinor_components(self.model, xi) @ self.pairing

    def identity_residuals(self) -> Dictionary:
        """Relative failures of the gamma and epsilon identities."""
        g, ginv = self.model.g, self.model.ginv
        delta = np.eye(4)
        mixed = ein("aAB,bAB->ab", self.gamma_low, self.gamma_up)
        pairs = ein("ab,aAB,bCD->ABCD", ginv, self.gamma_low, self.gamma_up)
        swapped = 4 * skew(ein("AC,BD->ABCD", delta, delta), [2, 3])
        volume = ein("ABCD,EFGH->ABCDEFGH", self.eps_low, self.eps_up)
        expected = 24 * skew(ein("AE,BF,CG,DH->ABCDEFGH", delta, delta, delta, delta), [4, 5, 6, 7])
        return Dictionary(
            skew_low=_residual(self.gamma_low + self.gamma_low.transpose(0, 2, 1), float(np.linalg.norm(self.gamma_low))),
            skew_up=_residual(self.gamma_up + self.gamma_up.transpose(0, 2, 1), float(np.linalg.norm(self.gamma_up))),
            metric=_residual(mixed - 4 * g, float(np.linalg.norm(4 * g))),
            completeness=_residual(pairs - swapped, float(np.linalg.norm(swapped))),
            epsilon=_residual(volume - expected, float(np.linalg.norm(expected))),
        )

    def weyl_from_spinor(self, c: Any) -> ArrayT:
        """``C_abcd`` of ``C_{AB}^{CD}``."""
        up, down = self.gamma_up, self.gamma_low_vup
        mixed = 0.5 * ein("aAB,bAD,cEF,dGF,BEDG->abcd", up, down, up, down, as_array(c))
        return ein("xbyd,bB,dD->xByD", mixed, self.model.g, self.model.g)

    def ricci_from_spinor(self, phi: Any) -> ArrayT:
        """``Phi_ab`` of ``Phi_ABCD``."""
        return 0.25 * ein("aAB,bCD,ABCD->ab", self.gamma_up, self.gamma_up, as_array(phi))

    def cotton_from_spinor(self, a: Any) -> ArrayT:
        """``A_abc`` of ``A_ABC^D``."""
        mixed = 0.5 * ein("aAB,bCD,cED,ABCE->abc", self.gamma_up, self.gamma_up, self.gamma_low_vup, as_array(a))
        return ein("abx,xc->abc", mixed, self.model.g)

    def lie_to_spinor(self, phi: Any) -> ArrayT:
        """``phi_A^B`` of a skew ``phi_ab``, acting on lower-index spinors."""
        full = self.model.spin_action(as_array(phi))
        plus = self.model.masks(Chirality.PLUS)
        block = full[np.ix_(plus, plus)]
        return self.pairing.T @ block @ np.linalg.inv(self.pairing.T)

    @cached_property
    def _bases(self) -> dict[Space, tuple[ArrayT, ArrayT]]:
        shape = (4,) * 4
        bases = {}
        for space, constraints, forward in (
            (Space.WEYL, _weyl_spinor_constraints, self.weyl_from_spinor),
            (Space.RICCI, _ricci_spinor_constraints, self.ricci_from_spinor),
            (Space.COTTON, _cotton_spinor_constraints, self.cotton_from_spinor),
        ):
            basis = _constrained_basis(constraints, shape)
            images = np.stack([forward(column.reshape(shape)).ravel() for column in basis.T], axis=1)
            bases[space] = (basis, images)
        return bases

    def spinor_dims(self) -> dict[str, int]:
        return {space.value: basis.shape[1] for space, (basis, _) in self._bases.items()}

    def to_spinor(self, space: Space | str, tensor: Any) -> ArrayT:
        """
        Spinor form of a Weyl, tracefree Ricci or Cotton tensor.

        :raises SymmetryViolation: the tensor lacks the symmetries of ``space``
        """
        space = Space(space)
        if space is Space.LIE:
            return self.lie_to_spinor(tensor)
        check = {Space.WEYL: check_weyl, Space.RICCI: check_ricci, Space.COTTON: check_cotton}[space]
        tensor = check(self.model, tensor)
        basis, images = self._bases[space]
        coefficients, *_ = np.linalg.lstsq(images, tensor.ravel(), rcond=None)
        return (basis @ coefficients).reshape((4,) * 4)

    def covariant_derivative(self, connection: Any, xi: PureSpinor) -> ArrayT:
        """``nabla^{AB} xi_C`` at a point from frame connection coefficients."""
        nabla = covariant_derivative_spinor(connection, xi) @ self.pairing
        return 0.5 * ein("aAB,aC->ABC", self.gamma_up_vup, nabla)


def _skew2(t: ArrayT, first: list[int], second: list[int]) -> ArrayT:
    return skew(skew(t, first), second)


def _lie_maps(phi: ArrayT, x: ArrayT) -> dict[tuple[Fraction, int], ArrayT]:
    d = np.eye(4)
    return {
        (Fraction(-1), 0): skew(ein("A,BC,C->AB", x, phi, x), [0, 1]),
        (Fraction(0), 0): phi @ x,
        (Fraction(0), 1): skew(ein("A,BC->ABC", x, phi), [0, 1]) - skew(ein("AC,BD,D->ABC", d, phi, x), [0, 1]) / 3,
    }


def _weyl_maps(c: ArrayT, x: ArrayT) -> dict[tuple[Fraction, int], ArrayT]:
    d = np.eye(4)
    lowest = _skew2(ein("A,BCEF,D,E,F->ABCD", x, c, x, x, x), [0, 1], [2, 3])
    minus_one = (
        ein("A,BCEF,D,F->ABCDE", x, c, x, x)
        - ein("AE,BCFG,D,F,G->ABCDE", d, c, x, x, x) / 4
        - ein("CE,DAFG,B,F,G->ABCDE", d, c, x, x, x) / 4
    )
    zero_three = (
        ein("A,BCEF,D->ABCDEF", x, c, x)
        - 2 * ein("AE,BCFG,D,G->ABCDEF", d, c, x, x) / 5
        - 2 * ein("CE,DAFG,B,G->ABCDEF", d, c, x, x) / 5
        + ein("AE,BCGH,DF,G,H->ABCDEF", d, c, d, x, x) / 10
    )
    return {
        (Fraction(-2), 0): lowest,
        (Fraction(-1), 0): skew(ein("A,BCDE,D,E->ABC", x, c, x, x), [0, 1]),
        (Fraction(-1), 1): _skew2(minus_one, [0, 1], [2, 3]),
        (Fraction(0), 0): ein("ABCD,C,D->AB", c, x, x),
        (Fraction(0), 1): skew(ein("A,BCDE,E->ABCD", x, c, x), [0, 1])
        - skew(ein("AD,BCEF,E,F->ABCD", d, c, x, x), [0, 1]) / 3,
        (Fraction(0), 3): sym(_skew2(zero_three, [0, 1], [2, 3]), [4, 5]),
        (Fraction(1), 0): ein("ABCD,D->ABC", c, x),
        (Fraction(1), 1): skew(ein("A,BCDE->ABCDE", x, c), [0, 1])
        - sym(skew(ein("AD,BCEF,F->ABCDE", d, c, x), [0, 1]), [3, 4]) / 2,
    }


def _cotton_maps(a: ArrayT, x: ArrayT) -> dict[tuple[Fraction, int], ArrayT]:
    d = np.eye(4)
    half = Fraction(1, 2)
    sym_part = ein("A,BCDF,E->ABCDEF", x, a, x) - ein("AF,BCDG,E,G->ABCDEF", d, a, x, x) / 4
    sym_part = sym_part - ein("A,BCDG,EF,G->ABCDEF", x, a, d, x) / 4
    pair = skew(ein("ABCE,D->ABCDE", a, x), [2, 3]) + skew(ein("CDAE,B->ABCDE", a, x), [0, 1])
    traces = skew(ein("ABCF,DE,F->ABCDE", a, d, x), [2, 3]) + skew(ein("CDAF,BE,F->ABCDE", a, d, x), [0, 1])
    return {
        (-3 * half, 0): _skew2(ein("A,BCDF,E,F->ABCDE", x, a, x, x), [0, 1, 2], [3, 4]),
        (-half, 0): skew(ein("A,BCDE,E->ABCD", x, a, x), [0, 1, 2]),
        (-half, 1): skew(ein("ABCE,D,E->ABCD", a, x, x), [2, 3]) + skew(ein("CDAE,B,E->ABCD", a, x, x), [0, 1]),
        (-half, 2): _skew2(sym_part, [0, 1, 2], [3, 4]),
        (half, 0): ein("ABCD,D->ABC", a, x),
        (half, 1): skew(ein("A,BCDE->ABCDE", x, a), [0, 1, 2]) - skew(ein("AE,BCDF,F->ABCDE", d, a, x), [0, 1, 2]) / 2,
        (half, 2): pair - 2 * traces / 5,
    }


def _ricci_maps(phi: ArrayT, x: ArrayT) -> dict[tuple[Fraction, int], ArrayT]:
    return {
        (Fraction(-1), 0): _skew2(ein("A,BCDE,F->ABCDEF", x, phi, x), [0, 1, 2], [3, 4, 5]),
        (Fraction(0), 0): skew(ein("A,BCDE->ABCDE", x, phi), [0, 1, 2]),
    }


SIX_MAPS: dict[Space, Callable[[ArrayT, ArrayT], dict[tuple[Fraction, int], ArrayT]]] = {
    Space.LIE: _lie_maps,
    Space.WEYL: _weyl_maps,
    Space.COTTON: _cotton_maps,
    Space.RICCI: _ricci_maps,
}
SIX_TOPS = {Space.LIE: Fraction(1), Space.WEYL: Fraction(2), Space.COTTON: Fraction(3, 2), Space.RICCI: Fraction(1)}


def six_projections(space: Space | str, tensor: Any, xi: Any, model: SixSpinorModel | None = None) -> dict[tuple[Fraction, int], ArrayT]:
    """Projection maps of ``space`` in spinor form, evaluated on a tensor given in vector indices."""
    space = Space(space)
    six = model or SixSpinorModel()
    x = six.lower(xi)
    return SIX_MAPS[space](six.to_spinor(space, tensor), x / np.linalg.norm(x))


def six_classify(space: Space | str, tensor: Any, xi: Any, model: SixSpinorModel | None = None) -> Dictionary:
    """
    Level and position from the spinor-form projection maps alone.

    Only pieces present for ``m = 3`` are reported.
    """
    space = Space(space)
    six = model or SixSpinorModel()
    tol = six.model.tol
    spinor = six.to_spinor(space, tensor)
    scale = float(np.linalg.norm(spinor))
    x = six.lower(xi)
    values = SIX_MAPS[space](spinor, x / np.linalg.norm(x))
    dims = module_dims(space, 3)
    vanishing = {cell: tol.vanishes(float(np.linalg.norm(v)), scale) for cell, v in values.items() if dims.get(cell, 0)}
    level: Fraction | float = ZERO_LEVEL
    surviving: list[str] = []
    if not tol.vanishes(scale):
        level = SIX_TOPS[space]
        for i in sorted({cell[0] for cell in vanishing}):
            alive = [cell_name(space, *cell) for cell in sorted(vanishing) if cell[0] == i and not vanishing[cell]]
            if alive:
                level, surviving = i, alive
                break
        else:
            surviving = [cell_name(space, level, 0)]
    return Dictionary(
        space=space.value,
        level=level,
        level_name=format_level(level),
        surviving=surviving,
        vanishing={cell_name(space, *cell): value for cell, value in vanishing.items()},
    )


def six_cross_check(space: Space | str, tensor: Any, xi: Any, model: SixSpinorModel | None = None) -> Dictionary:
    """
    Compare the spinor-form verdict with the generic filtration verdict.

    :raises InconsistentVerdict: the levels or surviving pieces differ
    """
    space = Space(space)
    six = model or SixSpinorModel()
    spinor = xi if isinstance(xi, PureSpinor) else PureSpinor(six.model, xi)
    local = six_classify(space, tensor, spinor.components, six)
    generic = classify(space, tensor, spinor)
    agrees = local.level == generic.level and sorted(local.surviving) == sorted(generic.surviving)
    if not agrees:
        raise InconsistentVerdict(
            f"{space.value}: spinor form gives {local.level_name} {local.surviving}, "
            f"generic maps give {generic.level_name} {generic.surviving}"
        )
    return Dictionary(space=space.value, level=local.level, level_name=local.level_name, surviving=local.surviving, agrees=agrees)


def six_conditions(connection: Any, xi: PureSpinor, model: SixSpinorModel | None = None) -> dict[str, ArrayT]:
    """Left-hand sides of the torsion conditions and the conformal Killing equation in spinor form."""
    six = model or SixSpinorModel()
    unit = xi.scaled(1 / np.linalg.norm(xi.components))
    x = six.lower(unit.components)
    nabla = six.covariant_derivative(connection, unit)
    d = np.eye(4)
    scalar = ein("D,DEE->", x, nabla)
    folded = ein("D,DAB->AB", x, nabla)
    divergence = ein("AEE->A", nabla)
    along = ein("E,AEC->AC", x, nabla)
    twistor = (
        skew(ein("ABC,D->ABCD", nabla, x), [2, 3])
        - _skew2(ein("A,BC,D->ABCD", divergence, d, x), [0, 1], [2, 3])
        - _skew2(ein("AC,BD->ABCD", along, d), [0, 1], [2, 3])
        - scalar * skew(ein("AC,BD->ABCD", d, d), [0, 1]) / 3
    )
    return {
        "skew_foliating": np.asarray(scalar),
        "sym_foliating": skew(ein("AB,C->ABC", folded, x), [1, 2]) - scalar * skew(ein("AB,C->ABC", d, x), [1, 2]) / 3,
        "proj_dirac": ein("A,BCC->AB", x, nabla) + ein("C,CBA->AB", x, nabla),
        "proj_twistor": twistor,
        "conformal_killing": nabla + 2 * skew(ein("AC,B->ABC", d, divergence), [0, 1]) / 3,
    }


def six_torsion_check(connection: Any, xi: PureSpinor, model: SixSpinorModel | None = None) -> Dictionary:
    """
    Torsion conditions in spinor form next to the generic ones.

    :raises InconsistentVerdict: some condition holds in one form but not the other
    """
    six = model or SixSpinorModel()
    gamma = check_connection(six.model, connection)
    unit = xi.scaled(1 / np.linalg.norm(xi.components))
    scale = max(float(np.linalg.norm(gamma)), float(np.linalg.norm(covariant_derivative_spinor(gamma, unit))))
    values = six_conditions(gamma, unit, six)
    generic = classify_torsion(gamma, unit)
    holds = {name: six.model.tol.vanishes(float(np.linalg.norm(value)), scale) for name, value in values.items()}
    mismatched = [name for name in CONDITIONS.values() if holds[name] != generic.conditions[name].holds]
    if mismatched:
        raise InconsistentVerdict(f"torsion conditions {mismatched} differ between spinor and generic forms")
    return Dictionary(holds=holds, agrees=True, conformal_killing=holds["conformal_killing"])
