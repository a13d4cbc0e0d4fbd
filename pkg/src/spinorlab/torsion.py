"""
Intrinsic torsion of a pure spinor field at a point.

A point is described by frame connection coefficients ``Gamma_abc`` (skew in
``bc``) in a frame where the spinor components are constant, so
``nabla_a xi = 1/4 Gamma_abc Gamma^b Gamma^c xi``. Everything else in this
module is algebra on that array.
"""

from __future__ import annotations

from fractions import Fraction
from functools import cache
from logging import Logger, getLogger
from typing import Any

import numpy as np

from spinorlab.clifford import CliffordModel
from spinorlab.definitions import ArrayT, Dictionary
from spinorlab.exceptions import BadComponentSymmetry, NotSkew, UndefinedComponent, ZeroConformalFactor
from spinorlab.parabolic import as_array, ein
from spinorlab.pure import DualPair, PureSpinor, make_dual_pair
from spinorlab.tensor import kernel, skew, sym

logger: Logger = getLogger(__name__)

#: The four torsion conditions, keyed by the graded piece they cut out.
CONDITIONS: dict[tuple[Fraction, int], str] = {
    (Fraction(-3, 2), 0): "skew_foliating",
    (Fraction(-3, 2), 1): "sym_foliating",
    (Fraction(-1, 2), 0): "proj_dirac",
    (Fraction(-1, 2), 1): "proj_twistor",
}

#: Fallback scales of the ``gamma_a^{BC}`` terms for m = 3.
M3_PI_COEFFICIENT = 1 / 6
M3_TWISTOR_COEFFICIENT = -2 / 3


def check_connection(model: CliffordModel, connection: Any) -> ArrayT:
    """
    :raises NotSkew: ``connection`` is not an ``n x n x n`` array skew in its last two slots
    """
    gamma = as_array(connection)
    if gamma.shape != (model.n,) * 3:
        raise NotSkew(f"expected connection coefficients of shape {(model.n,) * 3}; got {gamma.shape}")
    if not model.tol.vanishes(float(np.linalg.norm(gamma + gamma.transpose(0, 2, 1))), float(np.linalg.norm(gamma))):
        raise NotSkew("connection coefficients are not skew in the last two indices")
    return gamma


def covariant_derivative_spinor(connection: Any, xi: PureSpinor) -> ArrayT:
    """
    ``nabla_a xi^P`` for constant frame components.

    :raises NotSkew: connection coefficients are not skew
    """
    model = xi.model
    gamma = check_connection(model, connection)
    same = model.to_same(xi.chirality)
    other_up = np.einsum("ab,bij->aij", model.ginv, model.to_other(xi.chirality))
    same_up = np.einsum("ab,bij->aij", model.ginv, same)
    return 0.25 * ein("abc,bPQ,cQR,R->aP", gamma, same_up, other_up, xi.components)


def _nabla_parts(nabla: ArrayT, xi: PureSpinor) -> tuple[ArrayT, ArrayT, ArrayT]:
    """``nabla_a xi^{bB}``, ``nabla_b xi_a^C`` and the divergence ``nabla_b xi^{bB}``."""
    upper = ein("bPB,aP->abB", xi.gam_up, nabla)
    lower = ein("aPC,bP->baC", xi.gam, nabla)
    return upper, lower, np.einsum("bbB->B", upper)


def intrinsic_torsion(connection: Any, xi: PureSpinor) -> ArrayT:
    """``T_a^{BC} = (nabla_a xi^{bB}) xi_b^C``; skew in ``BC``."""
    upper, _, _ = _nabla_parts(covariant_derivative_spinor(connection, xi), xi)
    return ein("abB,bC->aBC", upper, xi.xi_low)


def _m3_pairing(xi: PureSpinor) -> tuple[ArrayT, ArrayT]:
    """Pairing lowering the spinor's own index into the opposite chirality and ``gamma_a^{BC}``."""
    model = xi.model
    pairing = model.chiral_pairing(xi.chirality, xi.chirality.opposite)
    inverse = np.linalg.inv(pairing)
    return pairing, ein("aBP,CP->aBC", model.to_other(xi.chirality), inverse)


def _pi_twistor_terms(gamma: ArrayT, xi: PureSpinor) -> tuple[ArrayT, ArrayT | None]:
    m = xi.model.m
    u, q = xi.xi_up, xi.xi2_up
    first = ein("bB,cC,abc->aBC", u, u, gamma)
    bracket = ein("aB,bcd,cdP,bPC->aBC", xi.xi_low, gamma, q, xi.gam_up) + ein("bB,bcd,cdP,aPC->aBC", u, gamma, q, xi.gam)
    base = first - skew(bracket, [1, 2]) / (2 * (m - 1))
    if m != 3:
        return base, None
    pairing, gamma_pair = _m3_pairing(xi)
    s = ein("bA,bcd,cdP,PA->", u, gamma, q, pairing)
    return base, s * gamma_pair


def _condition_twistor_terms(nabla: ArrayT, xi: PureSpinor) -> tuple[ArrayT, ArrayT | None]:
    m = xi.model.m
    upper, lower, div = _nabla_parts(nabla, xi)
    torsion = ein("abB,bC->aBC", upper, xi.xi_low)
    bracket = ein("aB,C->aBC", xi.xi_low, div) + ein("bB,baC->aBC", xi.xi_up, lower)
    base = torsion + 2 * skew(bracket, [1, 2]) / (m - 1)
    if m != 3:
        return base, None
    pairing, gamma_pair = _m3_pairing(xi)
    u = ein("bA,bP,PA->", xi.xi_up, nabla, pairing)
    return base, u * gamma_pair


def _fit_coefficient(base: ArrayT, extra: ArrayT, fallback: float, name: str, tol: Any) -> float:
    norm = float(np.vdot(extra, extra).real)
    if tol.vanishes(np.sqrt(norm), float(np.linalg.norm(base))):
        logger.warning("Cannot fit the m=3 %s coefficient; using %s", name, fallback)
        return fallback
    value = complex(-np.vdot(extra, base) / norm)
    residual = float(np.linalg.norm(base + value * extra))
    if not tol.vanishes(residual, float(np.linalg.norm(base))) or not tol.vanishes(abs(value.imag), abs(value)):
        logger.warning("m=3 %s terms are not proportional (residual %.3g); using %s", name, residual, fallback)
        return fallback
    logger.debug("Fitted m=3 %s coefficient %.12g", name, value.real)
    return value.real


@cache
def m3_coefficients(model: CliffordModel) -> tuple[float, float]:
    """
    Scales of the ``gamma_a^{BC}`` terms in the m = 3 projection map and condition.

    Both are fixed by requiring the trace-type representative of the lowest
    graded piece to satisfy them; this pins the normalization of the
    identification of ``S+`` with the dual of ``S-``.
    """
    pair = make_dual_pair(model, model.canonical_spinor(), seed=0)
    rep = torsion_representative(pair, Fraction(-1, 2), 0, np.arange(1, model.m + 1, dtype=np.complex128))
    base, extra = _pi_twistor_terms(rep, pair.xi)
    pi_coefficient = _fit_coefficient(base, extra, M3_PI_COEFFICIENT, "projection map", model.tol)
    base, extra = _condition_twistor_terms(covariant_derivative_spinor(rep, pair.xi), pair.xi)
    twistor_coefficient = _fit_coefficient(base, extra, M3_TWISTOR_COEFFICIENT, "twistor condition", model.tol)
    return pi_coefficient, twistor_coefficient


def pi_torsion(i: Fraction | int | str, j: int, connection: Any, xi: PureSpinor) -> ArrayT:
    """
    Projection maps on ``V (x) g/p`` evaluated on connection coefficients.

    ``(-1/2, 1)`` switches to its m = 3 form automatically.

    :raises UndefinedComponent: unknown cell
    """
    model = xi.model
    gamma = check_connection(model, connection)
    u, q = xi.xi_up, xi.xi2_up
    cell = (Fraction(i), j)
    if cell[0] == Fraction(-3, 2) and j in (0, 1):
        product = ein("abc,aA,bB,cC->ABC", gamma, u, u, u)
        return skew(product, [0, 1, 2]) if j == 0 else sym(product, [0, 1])
    if cell == (Fraction(-1, 2), 0):
        div = ein("bcd,cdQ,bQB->B", gamma, q, xi.gam_up)
        return ein("P,B->PB", xi.components, div) - ein("bB,bcd,cdP->PB", u, gamma, q)
    if cell == (Fraction(-1, 2), 1):
        base, extra = _pi_twistor_terms(gamma, xi)
        if extra is None:
            return base
        return base + m3_coefficients(model)[0] * extra
    raise UndefinedComponent(f"𝔚 has no projection map at {cell}")


def torsion_conditions(nabla: ArrayT, xi: PureSpinor) -> dict[str, ArrayT]:
    """Left-hand sides of the four torsion conditions built from ``nabla_a xi``."""
    upper, _, div = _nabla_parts(nabla, xi)
    contracted = ein("aA,abB,bC->ABC", xi.xi_up, upper, xi.xi_low)
    twistor, extra = _condition_twistor_terms(nabla, xi)
    if extra is not None:
        twistor = twistor + m3_coefficients(xi.model)[1] * extra
    return {
        "skew_foliating": skew(contracted, [0, 1, 2]),
        "sym_foliating": sym(contracted, [0, 1]),
        "proj_dirac": ein("P,B->PB", xi.components, div) - ein("bB,bP->PB", xi.xi_up, nabla),
        "proj_twistor": twistor,
    }


def invariant_torsion_classes(m: int) -> list[frozenset[str]]:
    """
    Sets of torsion conditions that cut out p-invariant classes.

    Conditions at the top level can only hold together with the lower ones they
    feed into; there are eight classes for m = 3 and seven for m > 3.
    """
    skew_f, sym_f, dirac, twistor = CONDITIONS.values()
    # presence of a top component forces presence of the pieces it generates
    forces = {skew_f: {dirac} | ({twistor} if m > 3 else set()), sym_f: {dirac, twistor}}
    classes = []
    for mask in range(16):
        present = {name for bit, name in enumerate(CONDITIONS.values()) if mask >> bit & 1}
        if all(forces[top] <= present for top in (skew_f, sym_f) if top in present):
            classes.append(frozenset(set(CONDITIONS.values()) - present))
    return classes


def _closure(model: CliffordModel, holding: set[str]) -> frozenset[str]:
    """Largest invariant class contained in ``holding``."""
    candidates = [c for c in invariant_torsion_classes(model.m) if c <= holding]
    return max(candidates, key=len)


def classify_torsion(connection: Any, xi: PureSpinor) -> Dictionary:
    """
    Which torsion conditions hold for the spinor at this point.

    Conditions are evaluated from ``nabla xi`` and cross-checked against the
    projection maps on the connection; derived predicates ``foliating``,
    ``recurrent`` and ``parallel`` are included.

    :raises NotSkew: connection coefficients are not skew
    """
    model = xi.model
    gamma = check_connection(model, connection)
    unit = xi.scaled(1 / np.linalg.norm(xi.components))
    nabla = covariant_derivative_spinor(gamma, unit)
    scale = max(float(np.linalg.norm(gamma)), float(np.linalg.norm(nabla)))
    values = torsion_conditions(nabla, unit)
    conditions = {}
    for cell, name in CONDITIONS.items():
        residual = float(np.linalg.norm(values[name]))
        pi_residual = float(np.linalg.norm(pi_torsion(*cell, gamma, unit)))
        conditions[name] = Dictionary(
            residual=residual,
            pi_residual=pi_residual,
            holds=model.tol.vanishes(residual, scale),
            pi_holds=model.tol.vanishes(pi_residual, scale),
        )
    holding = {name for name, entry in conditions.items() if entry.holds}
    torsion = ein("abB,bC->aBC", _nabla_parts(nabla, unit)[0], unit.xi_low)
    along = nabla - np.outer(nabla @ unit.components.conj(), unit.components)
    report = Dictionary(
        conditions=conditions,
        agrees=all(entry.holds == entry.pi_holds for entry in conditions.values()),
        holding=sorted(holding),
        invariant_class=sorted(_closure(model, holding)),
        foliating=conditions["skew_foliating"].holds and conditions["sym_foliating"].holds,
        recurrent=model.tol.vanishes(float(np.linalg.norm(along)), scale),
        parallel=model.tol.vanishes(float(np.linalg.norm(nabla)), scale),
        torsion_norm=float(np.linalg.norm(torsion)),
    )
    logger.debug("Torsion conditions holding: %s", report.holding)
    return report


def torsion_parts(connection: Any, pair: DualPair) -> Dictionary:
    """
    Graded parts of the intrinsic torsion in the adapted frame of ``pair``.

    ``upper[j, k, l]`` is the level ``-3/2`` part and ``mixed[j, k, l]`` the level
    ``-1/2`` part, both skew in ``kl``; the four irreducible pieces are split
    off as ``skew``, ``sym``, ``trace`` (a vector) and ``tracefree``.
    """
    m = pair.model.m
    torsion = intrinsic_torsion(connection, pair.xi)
    coords = ein("kB,lC,aBC->akl", pair.t, pair.t, torsion)
    upper = 2 * ein("aj,akl->jkl", pair.e_basis, coords)
    mixed = ein("aj,akl->jkl", pair.f_basis, coords)
    totally_skew = skew(upper, [0, 1, 2])
    trace = np.einsum("jjl->l", mixed)
    trace_part = _trace_component(m, trace)
    return Dictionary(
        upper=upper,
        mixed=mixed,
        skew=totally_skew,
        sym=upper - totally_skew,
        trace=trace,
        tracefree=mixed - trace_part,
    )


def _trace_component(m: int, vector: ArrayT) -> ArrayT:
    delta = np.eye(m)
    raw = ein("jk,l->jkl", delta, vector)
    return 2 * skew(raw, [1, 2]) / (m - 1)  # type: ignore[no-any-return]


def _torsion_component_check(m: int, i: Fraction, j: int, component: ArrayT) -> ArrayT:
    scale = float(np.linalg.norm(component)) or 1.0
    tol = 1e-9 * scale

    def fails(value: ArrayT) -> bool:
        return float(np.linalg.norm(value)) > tol

    if (i, j) == (Fraction(-1, 2), 0):
        if component.shape != (m,):
            raise BadComponentSymmetry(f"component must be a vector of length {m}")
        return _trace_component(m, component)
    if component.shape != (m, m, m) or fails(component + component.transpose(0, 2, 1)):
        raise BadComponentSymmetry("component must be skew in its last two indices")
    if (i, j) == (Fraction(-3, 2), 0) and fails(component - skew(component, [0, 1, 2])):
        raise BadComponentSymmetry("component must be totally skew")
    if (i, j) == (Fraction(-3, 2), 1) and fails(skew(component, [0, 1, 2])):
        raise BadComponentSymmetry("component must have no totally skew part")
    if (i, j) == (Fraction(-1, 2), 1) and fails(np.einsum("jjl->l", component)):
        raise BadComponentSymmetry("component must be trace-free")
    return component


def torsion_representative(pair: DualPair, i: Fraction | int | str, j: int, component: Any) -> ArrayT:
    """
    Connection coefficients whose intrinsic torsion lies in one graded piece.

    ``component`` is indexed in the adapted frame: ``(m, m, m)`` skew in its last
    two slots for every piece but ``(-1/2, 0)``, which takes a vector.

    :raises BadComponentSymmetry: the component lacks the required symmetries
    :raises UndefinedComponent: unknown cell
    """
    m = pair.model.m
    cell = (Fraction(i), j)
    if cell not in CONDITIONS:
        raise UndefinedComponent(f"𝔚 has no component {cell}")
    values = _torsion_component_check(m, *cell, np.asarray(component, dtype=np.complex128))
    x, y = pair.X, pair.Y
    if cell[0] == Fraction(-3, 2):
        return ein("aj,bk,cl,jkl->abc", y, y, y, values)
    return ein("aj,bk,cl,jkl->abc", x, y, y, values)


def random_torsion_component(m: int, i: Fraction | int | str, j: int, rng: np.random.Generator) -> ArrayT:
    cell = (Fraction(i), j)
    if cell == (Fraction(-1, 2), 0):
        return rng.normal(size=m) + 1j * rng.normal(size=m)
    raw = rng.normal(size=(m, m, m)) + 1j * rng.normal(size=(m, m, m))
    raw = skew(raw, [1, 2])
    if cell == (Fraction(-3, 2), 0):
        return skew(raw, [0, 1, 2])
    if cell == (Fraction(-3, 2), 1):
        return raw - skew(raw, [0, 1, 2])
    trace = np.einsum("jjl->l", raw)
    return raw - _trace_component(m, trace)


def dim_torsion_components(m: int) -> dict[tuple[Fraction, int], int]:
    """
    >>> sum(dim_torsion_components(4).values())
    48
    """
    return {
        (Fraction(-3, 2), 0): m * (m - 1) * (m - 2) // 6,
        (Fraction(-3, 2), 1): m * (m * m - 1) // 3,
        (Fraction(-1, 2), 0): m,
        (Fraction(-1, 2), 1): m * (m + 1) * (m - 2) // 2,
    }


def parabolic_connection(pair: DualPair, rng: np.random.Generator) -> ArrayT:
    """Random connection coefficients with every ``Gamma_a`` in the stabilizer of the line of ``xi``."""
    m, n = pair.model.m, pair.model.n
    x, y = pair.X, pair.Y
    gamma = np.zeros((n, n, n), dtype=np.complex128)
    for a in range(n):
        c = rng.normal(size=(m, m)) + 1j * rng.normal(size=(m, m))
        phi = rng.normal(size=(m, m)) + 1j * rng.normal(size=(m, m))
        mixed = x @ phi @ y.T
        gamma[a] = x @ (c - c.T) @ x.T + mixed - mixed.T
    return gamma


def lee_form(connection: Any, xi: PureSpinor) -> Dictionary:
    """
    Least-squares 1-form ``L`` with ``D = -(m - 1) xi^{A'} xi^{bB} L_b``.

    ``D`` is the left-hand side of the projected Dirac condition. The residual
    vanishes when the Dirac part of the torsion is of Lee type.
    """
    model = xi.model
    nabla = covariant_derivative_spinor(connection, xi)
    dirac = torsion_conditions(nabla, xi)["proj_dirac"]
    design = -(model.m - 1) * ein("P,bB->PBb", xi.components, xi.xi_up).reshape(-1, model.n)
    solution, *_ = np.linalg.lstsq(design, dirac.reshape(-1), rcond=None)
    residual = float(np.linalg.norm(design @ solution - dirac.reshape(-1)))
    return Dictionary(form=solution, residual=residual, exact=model.tol.vanishes(residual, float(np.linalg.norm(dirac))))


def conformal_connection(model: CliffordModel, connection: Any, upsilon: Any, omega: complex = 1.0) -> ArrayT:
    """
    Frame connection after ``g -> Omega^2 g``:
    ``Omega^{-1} (Gamma_abc + Upsilon_b g_ac - Upsilon_c g_ab)``.
    """
    if model.tol.vanishes(abs(omega)):
        raise ZeroConformalFactor("conformal factor vanishes")
    gamma = check_connection(model, connection)
    ups = np.asarray(upsilon, dtype=np.complex128)
    shift = ein("b,ac->abc", ups, model.g) - ein("c,ab->abc", ups, model.g)
    return (gamma + shift) / omega  # type: ignore[no-any-return]


def conformal_rescale_torsion(connection: Any, xi: PureSpinor, upsilon: Any, omega: complex = 1.0) -> Dictionary:
    """Torsion classification before and after a conformal change with ``Upsilon = d log Omega``."""
    rescaled = conformal_connection(xi.model, connection, upsilon, omega)
    return Dictionary(
        connection=rescaled,
        before=classify_torsion(connection, xi),
        after=classify_torsion(rescaled, xi),
    )


def recurrent_rescaling(connection: Any, xi: PureSpinor) -> Dictionary:
    """
    Conformal gradient making the Dirac part of the torsion vanish, when one exists.

    Combined with the projected twistor and foliating conditions this turns
    ``xi`` into a recurrent spinor.
    """
    model = xi.model
    gamma = check_connection(model, connection)
    target = torsion_conditions(covariant_derivative_spinor(gamma, xi), xi)["proj_dirac"].reshape(-1)
    columns = []
    for b in range(model.n):
        basis = np.zeros(model.n, dtype=np.complex128)
        basis[b] = 1
        shift = conformal_connection(model, np.zeros_like(gamma), basis)
        columns.append(torsion_conditions(covariant_derivative_spinor(shift, xi), xi)["proj_dirac"].reshape(-1))
    design = np.stack(columns, axis=1)
    solution, *_ = np.linalg.lstsq(design, -target, rcond=None)
    residual = float(np.linalg.norm(design @ solution + target))
    return Dictionary(upsilon=solution, residual=residual, exact=model.tol.vanishes(residual, float(np.linalg.norm(target))))


def _gamma_on(model: CliffordModel, xi: PureSpinor, zeta: ArrayT) -> ArrayT:
    """``(gamma_a zeta)^P`` for ``zeta`` of the opposite chirality."""
    return np.einsum("aij,j->ai", model.to_same(xi.chirality), zeta)


def twistor_residual(connection: Any, xi: PureSpinor, zeta: Any) -> ArrayT:
    """``nabla_a xi + (1/n) gamma_a zeta`` at the point."""
    model = xi.model
    zeta = np.asarray(zeta, dtype=np.complex128)
    return covariant_derivative_spinor(connection, xi) + _gamma_on(model, xi, zeta) / model.n


def companion_spinor(connection: Any, xi: PureSpinor) -> ArrayT:
    """``zeta = gamma^a nabla_a xi``; solves the twistor equation whenever any companion does."""
    model = xi.model
    other_up = np.einsum("ab,bij->aij", model.ginv, model.to_other(xi.chirality))
    return ein("aij,aj->i", other_up, covariant_derivative_spinor(connection, xi))


def twistor_prolongation_residual(nabla_zeta: Any, schouten: Any, xi: PureSpinor) -> ArrayT:
    """``nabla_a zeta + (n/2) Rho_ab gamma^b xi`` given values of ``nabla zeta`` and the Schouten tensor."""
    n = xi.model.n
    return np.asarray(nabla_zeta, dtype=np.complex128) + n / 2 * np.asarray(schouten, dtype=np.complex128) @ xi.xi_up


def conformal_rescale_companion(zeta: Any, xi: PureSpinor, upsilon: Any, omega: complex = 1.0) -> ArrayT:
    """``Omega^{-1} (zeta + (n/2) Upsilon_a xi^{aA})``."""
    n = xi.model.n
    ups = np.asarray(upsilon, dtype=np.complex128)
    return (np.asarray(zeta, dtype=np.complex128) + n / 2 * ups @ xi.xi_up) / omega  # type: ignore[no-any-return]


def conformal_spinor_derivative(connection: Any, xi: PureSpinor, upsilon: Any, omega: complex = 1.0) -> ArrayT:
    """
    ``nabla xi`` after a conformal change, with ``xi`` of conformal weight one half.
    """
    model = xi.model
    rescaled = conformal_connection(model, connection, upsilon, omega)
    ups = np.asarray(upsilon, dtype=np.complex128)
    return covariant_derivative_spinor(rescaled, xi) + 0.5 * np.outer(ups, xi.components) / omega  # type: ignore[no-any-return]


def random_companion(xi: PureSpinor, rng: np.random.Generator) -> ArrayT:
    """
    Companion spinor for which the twistor equation is solvable at a point.

    Any ``zeta`` works for ``m <= 3``; beyond that ``gamma_a zeta`` must stay
    tangent to the cone of pure spinors, so ``zeta = v . xi`` for a random ``v``.
    """
    model = xi.model
    if model.m <= 3:
        return rng.normal(size=model.half) + 1j * rng.normal(size=model.half)  # type: ignore[no-any-return]
    v = rng.normal(size=model.n) + 1j * rng.normal(size=model.n)
    return np.einsum("a,aij,j->i", v, model.to_other(xi.chirality), xi.components)  # type: ignore[no-any-return]


def construct_twistor_connection(xi: PureSpinor, zeta: Any, seed: int | None = None) -> Dictionary:
    """
    Connection coefficients solving the twistor equation at a point for given ``(xi, zeta)``.

    Solved direction by direction over a basis of skew matrices; a random
    element of the stabilizer of ``xi`` is added to each direction.
    For ``m > 3`` only companions tangent to the pure cone are solvable; see
    :func:`random_companion`.
    """
    model = xi.model
    n = model.n
    rng = np.random.default_rng(seed)
    zeta = np.asarray(zeta, dtype=np.complex128)
    targets = -_gamma_on(model, xi, zeta) / n
    basis = []
    images = []
    for a in range(n):
        for b in range(a + 1, n):
            phi = np.zeros((n, n), dtype=np.complex128)
            phi[a, b], phi[b, a] = 1, -1
            basis.append(phi)
            images.append(model.restrict(model.spin_action(phi) @ xi.full, xi.chirality))
    design = np.stack(images, axis=1)
    stabilizer = kernel(design, model.tol)
    gamma = np.zeros((n, n, n), dtype=np.complex128)
    residual = 0.0
    for a in range(n):
        solution, *_ = np.linalg.lstsq(design, targets[a], rcond=None)
        residual = max(residual, float(np.linalg.norm(design @ solution - targets[a])))
        if stabilizer.shape[1]:
            solution = solution + stabilizer @ (rng.normal(size=stabilizer.shape[1]))
        gamma[a] = np.einsum("k,kij->ij", solution, np.asarray(basis))
    return Dictionary(connection=gamma, residual=residual, exact=model.tol.vanishes(residual, float(np.linalg.norm(targets))))


def pure_pair_check(xi: PureSpinor, zeta: Any) -> Dictionary:
    """
    Whether ``zeta^{aA'} zeta_a^{B'} = 0`` and ``xi^{aB} zeta_a^{A'} = -2 zeta^B xi^{A'}``.
    """
    model = xi.model
    zeta = np.asarray(zeta, dtype=np.complex128)
    zeta_low = _gamma_on(model, xi, zeta)
    zeta_up = model.ginv @ zeta_low
    null = ein("aP,aQ->PQ", zeta_up, zeta_low)
    relation = ein("aB,aP->BP", xi.xi_up, zeta_low) + 2 * np.outer(zeta, xi.components)
    scale = float(np.linalg.norm(zeta)) * float(np.linalg.norm(xi.components))
    null_residual = float(np.linalg.norm(null))
    relation_residual = float(np.linalg.norm(relation))
    return Dictionary(
        null_residual=null_residual,
        relation_residual=relation_residual,
        holds=model.tol.vanishes(null_residual, float(np.linalg.norm(zeta)) ** 2)
        and model.tol.vanishes(relation_residual, scale),
    )
