"""
Curvature of polynomial metrics at a point, null frames, and conformal changes.

Conventions: ``2 nabla_[a nabla_b] V^d = R_abc^d V^c`` and ``R_ab = R_acb^c``,
so the Ricci tensor of a round sphere is negative while the Schouten tensor
``Rho = Phi / (2 - n) - R g / (2n(n - 1))`` is the usual one. The Cotton-York
tensor is ``A_abc = nabla_b Rho_ca - nabla_c Rho_ba``.
"""

from __future__ import annotations

from logging import Logger, getLogger
from typing import Any

import numpy as np
import sympy

from spinorlab.clifford import CliffordModel, build_model
from spinorlab.curvature import CurvatureBundle, kulkarni_nomizu
from spinorlab.definitions import ArrayT, Chirality, Dictionary
from spinorlab.exceptions import DegenerateMetric, UnsupportedDimension, ZeroConformalFactor
from spinorlab.parabolic import ein
from spinorlab.polynomial import MetricJet, PolynomialMetric, ScalarJet
from spinorlab.tensor import kernel
from spinorlab.tolerance import DEFAULT_TOLERANCE, ToleranceContext
from spinorlab.torsion import conformal_connection

logger: Logger = getLogger(__name__)


def _check_dimension(metric: PolynomialMetric) -> None:
    if metric.m < 2:
        raise UnsupportedDimension(f"curvature needs m >= 2; got m={metric.m}")


def _connection_jets(jet: MetricJet) -> tuple[ArrayT, ArrayT, ArrayT]:
    """Christoffel symbols ``Gamma^a_bc`` and their first and second partial derivatives."""
    dg, d2g, d3g = jet.dg, jet.d2g, jet.d3g
    assert dg is not None and d2g is not None and d3g is not None
    first = 0.5 * (ein("bdc->dbc", dg) + ein("cdb->dbc", dg) - dg)
    d_first = 0.5 * (ein("ebdc->edbc", d2g) + ein("ecdb->edbc", d2g) - d2g)
    d2_first = 0.5 * (ein("febdc->fedbc", d3g) + ein("fecdb->fedbc", d3g) - d3g)

    h = jet.ginv
    dh = -ein("ij,ejk,kl->eil", h, dg, h)
    d2h = -(ein("fij,ejk,kl->feil", dh, dg, h) + ein("ij,fejk,kl->feil", h, d2g, h) + ein("ij,ejk,fkl->feil", h, dg, dh))

    gamma = ein("ad,dbc->abc", h, first)
    d_gamma = ein("ead,dbc->eabc", dh, first) + ein("ad,edbc->eabc", h, d_first)
    d2_gamma = (
        ein("fead,dbc->feabc", d2h, first)
        + ein("ead,fdbc->feabc", dh, d_first)
        + ein("fad,edbc->feabc", dh, d_first)
        + ein("ad,fedbc->feabc", h, d2_first)
    )
    return gamma, d_gamma, d2_gamma


def _covariant(derivative: ArrayT, tensor: ArrayT, gamma: ArrayT) -> ArrayT:
    """``nabla_f T_{a...}`` from ``d_f T`` for a tensor with all indices down."""
    out = derivative.copy()
    rank = tensor.ndim
    for slot in range(rank):
        moved = np.tensordot(gamma, tensor, axes=([0], [slot]))  # (f, a_slot, other slots in order)
        out -= np.moveaxis(moved, 1, slot + 1)
    return out


def curvature_at(metric: PolynomialMetric, point: Any, tol: ToleranceContext | None = None) -> Dictionary:
    """
    Coordinate components of every curvature quantity at ``point``.

    The result carries the Christoffel symbols ``christoffel[a, b, c] =
    Gamma^a_bc``, their lowered form ``connection[a, b, c] = Gamma_abc``,
    ``riemann``, ``weyl``, ``ricci``, ``tracefree_ricci``, ``scalar``,
    ``schouten``, ``cotton`` and the derivatives needed by the identity
    checks, together with ``residuals``.

    :raises DegenerateMetric: the metric is singular at ``point``
    :raises UnsupportedDimension: ``m < 2``
    """
    _check_dimension(metric)
    tol = tol or DEFAULT_TOLERANCE
    jet = metric.jet(point)
    n = metric.n
    g, dg, h = jet.g, jet.dg, jet.ginv
    assert dg is not None
    gamma, d_gamma, d2_gamma = _connection_jets(jet)

    # R_abc^d
    r_up = (
        ein("adbc->abcd", d_gamma)
        - ein("bdac->abcd", d_gamma)
        + ein("dae,ebc->abcd", gamma, gamma)
        - ein("dbe,eac->abcd", gamma, gamma)
    )
    d_r_up = (
        ein("fadbc->fabcd", d2_gamma)
        - ein("fbdac->fabcd", d2_gamma)
        + ein("fdae,ebc->fabcd", d_gamma, gamma)
        + ein("dae,febc->fabcd", gamma, d_gamma)
        - ein("fdbe,eac->fabcd", d_gamma, gamma)
        - ein("dbe,feac->fabcd", gamma, d_gamma)
    )
    riemann = ein("abce,ed->abcd", r_up, g)
    d_riemann = ein("fabce,ed->fabcd", d_r_up, g) + ein("abce,fed->fabcd", r_up, dg)

    ricci = ein("acbc->ab", r_up)
    d_ricci = ein("facbc->fab", d_r_up)
    scalar = complex(ein("ab,ab->", h, ricci))
    dh = -ein("ij,ejk,kl->eil", h, dg, h)
    d_scalar = ein("fab,ab->f", dh, ricci) + ein("ab,fab->f", h, d_ricci)

    tracefree = ricci - scalar * g / n
    d_tracefree = d_ricci - ein("f,ab->fab", d_scalar, g) / n - scalar * dg / n
    schouten = tracefree / (2 - n) - scalar * g / (2 * n * (n - 1))
    d_schouten = d_tracefree / (2 - n) - (ein("f,ab->fab", d_scalar, g) + scalar * dg) / (2 * n * (n - 1))

    nabla_schouten = _covariant(d_schouten, schouten, gamma)
    cotton = ein("bca->abc", nabla_schouten) - ein("cba->abc", nabla_schouten)
    weyl = riemann + kulkarni_nomizu(g, schouten)
    nabla_riemann = _covariant(d_riemann, riemann, gamma)
    nabla_weyl = nabla_riemann + _kulkarni_nomizu_derivative(g, nabla_schouten)

    result = Dictionary(
        point=jet.point,
        metric=g,
        inverse_metric=h,
        christoffel=gamma,
        connection=ein("dab,dc->abc", gamma, g),
        riemann=riemann,
        weyl=weyl,
        ricci=ricci,
        tracefree_ricci=tracefree,
        scalar=scalar,
        schouten=schouten,
        cotton=cotton,
        nabla_riemann=nabla_riemann,
        nabla_weyl=nabla_weyl,
        nabla_schouten=nabla_schouten,
    )
    result.residuals = curvature_residuals(result, tol)
    logger.debug("Curvature at %s: |C|=%.3g |A|=%.3g R=%s", jet.point, np.linalg.norm(weyl), np.linalg.norm(cotton), scalar)
    return result


def _kulkarni_nomizu_derivative(g: ArrayT, nabla_rho: ArrayT) -> ArrayT:
    """``nabla_f`` of ``kulkarni_nomizu(g, Rho)`` given ``nabla_f Rho``."""
    return (
        ein("ac,fbd->fabcd", g, nabla_rho)
        + ein("bd,fac->fabcd", g, nabla_rho)
        - ein("ad,fbc->fabcd", g, nabla_rho)
        - ein("bc,fad->fabcd", g, nabla_rho)
    )


def curvature_residuals(curvature: Dictionary, tol: ToleranceContext | None = None) -> Dictionary:
    """
    Identity residuals of a :func:`curvature_at` result.

    ``symmetries`` covers the index symmetries of Riemann, ``first_bianchi``
    and ``second_bianchi`` the Bianchi identities, ``decomposition`` rebuilds
    Riemann from its Weyl, trace-free Ricci and scalar parts,
    ``weyl_trace`` and ``ricci_trace`` the trace conditions and
    ``contracted_bianchi`` is ``nabla^d C_dabc + (n - 3) A_abc``.
    """
    tol = tol or DEFAULT_TOLERANCE
    g, h = curvature.metric, curvature.inverse_metric
    n = g.shape[0]
    r = curvature.riemann
    symmetries = max(
        float(np.linalg.norm(r + ein("bacd->abcd", r))),
        float(np.linalg.norm(r + ein("abdc->abcd", r))),
        float(np.linalg.norm(r - ein("cdab->abcd", r))),
    )
    first = r + ein("bcad->abcd", r) + ein("cabd->abcd", r)
    nr = curvature.nabla_riemann
    second = nr + ein("abfcd->fabcd", nr) + ein("bfacd->fabcd", nr)
    rebuilt = (
        curvature.weyl
        + kulkarni_nomizu(g, curvature.tracefree_ricci) / (n - 2)
        + curvature.scalar * kulkarni_nomizu(g, g) / (2 * n * (n - 1))
    )
    divergence = ein("fd,fdabc->abc", h, curvature.nabla_weyl)
    scale = max(float(np.linalg.norm(r)), 1.0)
    out = Dictionary(
        symmetries=symmetries,
        first_bianchi=float(np.linalg.norm(first)),
        second_bianchi=float(np.linalg.norm(second)),
        decomposition=float(np.linalg.norm(r - rebuilt)),
        weyl_trace=float(np.linalg.norm(ein("ac,abcd->bd", h, curvature.weyl))),
        ricci_trace=abs(complex(ein("ab,ab->", h, curvature.tracefree_ricci))),
        contracted_bianchi=float(np.linalg.norm(divergence + (n - 3) * curvature.cotton)),
    )
    out.holds = all(tol.vanishes(value, scale) for value in out.values())
    return out


def null_frame(g: Any, model: CliffordModel) -> ArrayT:
    """
    Columns ``e_1..e_m, f_1..f_m`` with ``g(e_i, f_j) = 1/2 delta_ij`` and all else zero.

    The reduction is deterministic: the first null coordinate vector (or the
    null combination of the first two) pairs with the vector of largest
    inner product, the rest is projected off, and so on. The last pair is
    swapped when needed so the frame has the orientation
    ``det F = sqrt(det N / det g)`` on the principal branch.

    :raises DegenerateMetric: ``g`` is singular
    """
    g = np.asarray(g, dtype=np.complex128)
    n = g.shape[0]
    m = n // 2
    tol = model.tol
    scale = float(np.linalg.norm(g))
    if abs(np.linalg.det(g)) <= 1e-12 * max(scale, 1.0) ** n:
        raise DegenerateMetric("cannot build a null frame for a singular metric")

    def form(u: ArrayT, v: ArrayT) -> complex:
        return complex(u @ g @ v)

    pool = [np.eye(n, dtype=np.complex128)[:, k] for k in range(n)]
    e_vectors: list[ArrayT] = []
    f_vectors: list[ArrayT] = []
    for _ in range(m):
        pivot = next((k for k, w in enumerate(pool) if tol.vanishes(abs(form(w, w)), scale)), None)
        if pivot is None:
            first, second = pool[0], pool[1]
            a, b, c = form(second, second), 2 * form(first, second), form(first, first)
            if tol.vanishes(abs(a), scale):
                pivot = 1
            else:
                t = (-b + np.sqrt(b * b - 4 * a * c + 0j)) / (2 * a)
                pool[0] = first + t * second
                pivot = 0
        p = pool.pop(pivot)
        pairing = [abs(form(p, w)) for w in pool]
        partner = int(np.argmax(pairing))
        if tol.vanishes(pairing[partner], scale):
            raise DegenerateMetric("null frame reduction found no partner vector")
        q = pool.pop(partner)
        q = q - form(q, q) / (2 * form(p, q)) * p
        f = q / (2 * form(p, q))
        e_vectors.append(p)
        f_vectors.append(f)
        pool = [w - 2 * form(w, f) * p - 2 * form(w, p) * f for w in pool]
    frame = np.stack(e_vectors + f_vectors, axis=1)
    target = np.sqrt(np.linalg.det(model.g) / np.linalg.det(g) + 0j)
    if abs(np.linalg.det(frame) + target) < abs(np.linalg.det(frame) - target):
        frame[:, [m - 1, n - 1]] = frame[:, [n - 1, m - 1]]
    logger.debug("Null frame with residual %.3g", np.linalg.norm(frame.T @ g @ frame - model.g))
    return frame


def _check_frame(frame: ArrayT, g: ArrayT, model: CliffordModel) -> None:
    residual = float(np.linalg.norm(frame.T @ g @ frame - model.g))
    if not model.tol.vanishes(residual, float(np.linalg.norm(g))):
        raise DegenerateMetric(f"frame is not null-normalized for this metric (residual {residual:.3g})")


def frame_components(tensor: Any, frame: ArrayT) -> ArrayT:
    """Components of a covariant tensor in the frame."""
    out = np.asarray(tensor, dtype=np.complex128)
    for slot in range(out.ndim):
        out = np.moveaxis(np.tensordot(out, frame, axes=([slot], [0])), -1, slot)
    return out


def frame_connection(metric: PolynomialMetric, point: Any, frame: Any = None, model: CliffordModel | None = None) -> Dictionary:
    """
    Frame connection coefficients ``Gamma_abc = g(nabla_{E_a} E_b, E_c)`` at ``point``.

    The frame field agrees with ``frame`` (default: :func:`null_frame`) at
    the point and keeps ``g(E_a, E_b)`` constant to first order, so the
    coefficients are skew in ``bc``.
    """
    _check_dimension(metric)
    model = model or build_model(metric.m)
    jet = metric.jet(point, 1)
    assert jet.dg is not None
    frame = null_frame(jet.g, model) if frame is None else np.asarray(frame, dtype=np.complex128)
    _check_frame(frame, jet.g, model)
    gamma, _, _ = _connection_jets(metric.jet(point))
    d_frame = -0.5 * ein("ia,ab,jb,kjl,lc->kic", frame, model.ginv, frame, jet.dg, frame)
    moved = d_frame + ein("ikj,jb->kib", gamma, frame)
    connection = ein("ka,kib,il,lc->abc", frame, moved, jet.g, frame)
    skew_residual = float(np.linalg.norm(connection + connection.transpose(0, 2, 1)))
    return Dictionary(frame=frame, connection=connection, skew_residual=skew_residual)


def framed_curvature(metric: PolynomialMetric, point: Any, frame: Any = None, model: CliffordModel | None = None) -> Dictionary:
    """
    Curvature, frame connection and a :class:`CurvatureBundle` in the null frame.

    The bundle is what the classification and integrability functions consume.
    """
    model = model or build_model(metric.m)
    curvature = curvature_at(metric, point, model.tol)
    connection = frame_connection(metric, point, frame, model)
    frame = connection.frame
    weyl = frame_components(curvature.weyl, frame)
    tracefree = frame_components(curvature.tracefree_ricci, frame)
    cotton = frame_components(curvature.cotton, frame)
    riemann = frame_components(curvature.riemann, frame)
    bundle = CurvatureBundle(model, weyl=weyl, ricci=tracefree, scalar=curvature.scalar, cotton=cotton, riemann=riemann)
    return Dictionary(
        curvature=curvature,
        frame=frame,
        connection=connection.connection,
        bundle=bundle,
        weyl=weyl,
        tracefree_ricci=tracefree,
        schouten=frame_components(curvature.schouten, frame),
        cotton=cotton,
        riemann=riemann,
    )


def parallel_spinors(connection: Any, model: CliffordModel, chirality: int = 1) -> ArrayT:
    """
    Spinors with constant frame components annihilated by ``nabla`` at the point (columns).
    """
    chirality = Chirality(chirality)
    gamma = np.asarray(connection, dtype=np.complex128)
    same_up = ein("ab,bij->aij", model.ginv, model.to_same(chirality))
    other_up = ein("ab,bij->aij", model.ginv, model.to_other(chirality))
    operators = 0.25 * ein("abc,bPQ,cQR->aPR", gamma, same_up, other_up)
    return kernel(operators.reshape(-1, operators.shape[-1]), model.tol)


def upsilon(omega: Any, n: int, point: Any) -> Dictionary:
    """
    ``Upsilon_a = d_a Omega / Omega`` and ``d_a Upsilon_b`` for a polynomial ``Omega``.

    :raises ZeroConformalFactor: ``Omega`` vanishes at ``point``
    """
    jet = ScalarJet.at(omega, n, point)
    if abs(jet.value) <= DEFAULT_TOLERANCE.eps_abs:
        raise ZeroConformalFactor(f"conformal factor vanishes at {point}")
    ups = jet.gradient / jet.value
    return Dictionary(omega=jet.value, upsilon=ups, d_upsilon=jet.hessian / jet.value - np.outer(ups, ups))


def conformal_metric(metric: PolynomialMetric, omega: Any) -> PolynomialMetric:
    """``Omega^2 g``."""
    return metric.scaled(sympy.sympify(omega) ** 2)


def conformal_transform(metric: PolynomialMetric, omega: Any, point: Any, tol: ToleranceContext | None = None) -> Dictionary:
    """
    Hatted quantities for ``g -> Omega^2 g`` from the transformation rules, and from direct recomputation.

    Rules: ``Rho^ = Rho - nabla Upsilon + Upsilon Upsilon - 1/2 |Upsilon|^2 g``,
    ``A^_abc = A_abc - Upsilon^d C_dabc``, ``C^_abcd = Omega^2 C_abcd`` and, in
    the rescaled frame ``E / Omega``,
    ``Gamma^_abc = Omega^-1 (Gamma_abc + Upsilon_b g_ac - Upsilon_c g_ab)``.
    ``residuals`` compares each rule with the recomputed value.

    :raises ZeroConformalFactor: ``Omega`` vanishes at ``point``
    """
    _check_dimension(metric)
    tol = tol or DEFAULT_TOLERANCE
    model = build_model(metric.m, tol)
    factor = upsilon(omega, metric.n, point)
    base = curvature_at(metric, point, tol)
    hatted_metric = conformal_metric(metric, omega)
    direct = curvature_at(hatted_metric, point, tol)
    g, h = base.metric, base.inverse_metric
    ups, om = factor.upsilon, factor.omega

    nabla_ups = factor.d_upsilon - ein("cab,c->ab", base.christoffel, ups)
    norm2 = complex(ups @ h @ ups)
    rules = Dictionary(
        schouten=base.schouten - nabla_ups + np.outer(ups, ups) - 0.5 * norm2 * g,
        cotton=base.cotton - ein("d,de,eabc->abc", ups, h, base.weyl),
        weyl=om**2 * base.weyl,
    )

    frames = frame_connection(metric, point, model=model)
    hatted_frames = frame_connection(hatted_metric, point, frames.frame / om, model)
    rules.frame_connection = conformal_connection(model, frames.connection, frames.frame.T @ ups, om)

    residuals = Dictionary(
        schouten=float(np.linalg.norm(rules.schouten - direct.schouten)),
        cotton=float(np.linalg.norm(rules.cotton - direct.cotton)),
        weyl=float(np.linalg.norm(rules.weyl - direct.weyl)),
        frame_connection=float(np.linalg.norm(rules.frame_connection - hatted_frames.connection)),
    )
    scale = max(float(np.linalg.norm(direct.riemann)), float(np.linalg.norm(hatted_frames.connection)), 1.0)
    residuals.holds = all(tol.vanishes(value, scale) for value in residuals.values())
    return Dictionary(omega=om, upsilon=ups, rules=rules, direct=direct, residuals=residuals)
