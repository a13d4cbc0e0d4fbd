"""
Curvature spaces and their projection maps relative to a pure spinor.

Elements are plain complex arrays with all indices down:

- trace-free Ricci ``Phi_ab``: symmetric and trace-free;
- Cotton-York ``A_abc``: skew in ``bc``, no totally skew part, trace-free;
- Weyl ``C_abcd``: algebraic curvature tensor, trace-free.
"""

from __future__ import annotations

from fractions import Fraction
from logging import Logger, getLogger
from typing import Any, Callable

import numpy as np

from spinorlab.clifford import CliffordModel
from spinorlab.definitions import ArrayT, Dictionary
from spinorlab.exceptions import SymmetryViolation, UndefinedComponent
from spinorlab.parabolic import as_array, ein
from spinorlab.pure import PureSpinor
from spinorlab.tensor import skew, sym

logger: Logger = getLogger(__name__)

CellT = tuple[Fraction, int]


def kulkarni_nomizu(h: ArrayT, k: ArrayT) -> ArrayT:
    """``h_ac k_bd + h_bd k_ac - h_ad k_bc - h_bc k_ad``."""
    return (  # type: ignore[no-any-return]
        ein("ac,bd->abcd", h, k) + ein("bd,ac->abcd", h, k) - ein("ad,bc->abcd", h, k) - ein("bc,ad->abcd", h, k)
    )


def project_to_tracefree_ricci(model: CliffordModel, raw: Any) -> ArrayT:
    raw = as_array(raw)
    symmetric = 0.5 * (raw + raw.T)
    trace = ein("ab,ab->", model.ginv, symmetric)
    return symmetric - trace / model.n * model.g  # type: ignore[no-any-return]


def project_to_cotton(model: CliffordModel, raw: Any) -> ArrayT:
    """Orthogonal part of a raw 3-tensor with Cotton-York symmetries."""
    tensor = skew(as_array(raw), [1, 2])
    tensor = tensor - skew(tensor, [0, 1, 2])
    trace = ein("ab,abc->c", model.ginv, tensor)
    correction = ein("ab,c->abc", model.g, trace) - ein("ac,b->abc", model.g, trace)
    return tensor - correction / (model.n - 1)  # type: ignore[no-any-return]


def algebraic_curvature_part(raw: Any) -> ArrayT:
    """Part of a raw 4-tensor with the symmetries of a Riemann tensor."""
    tensor = skew(skew(as_array(raw), [0, 1]), [2, 3])
    tensor = 0.5 * (tensor + tensor.transpose(2, 3, 0, 1))
    return tensor - skew(tensor, [0, 1, 2, 3])


def ricci_contraction(model: CliffordModel, riemann: ArrayT) -> ArrayT:
    """``R_bd = g^{ac} R_abcd``."""
    return ein("ac,abcd->bd", model.ginv, riemann)


def project_to_weyl(model: CliffordModel, raw: Any) -> ArrayT:
    """
    Weyl part of a raw 4-tensor.

    Pair symmetry, the first Bianchi identity and trace removal are applied in
    turn; the result is a fixed point of every step.
    """
    n = model.n
    tensor = algebraic_curvature_part(raw)
    ricci = ricci_contraction(model, tensor)
    scalar = ein("bd,bd->", model.ginv, ricci)
    g = model.g
    return (  # type: ignore[no-any-return]
        tensor
        - kulkarni_nomizu(g, ricci) / (n - 2)
        + scalar * kulkarni_nomizu(g, g) / (2 * (n - 1) * (n - 2))
    )


def _require(model: CliffordModel, tensor: ArrayT, projected: ArrayT, name: str) -> ArrayT:
    scale = float(np.linalg.norm(tensor))
    if not model.tol.vanishes(float(np.linalg.norm(tensor - projected)), scale):
        raise SymmetryViolation(f"tensor does not have {name} symmetries")
    return tensor


def check_ricci(model: CliffordModel, tensor: Any) -> ArrayT:
    """:raises SymmetryViolation: not symmetric trace-free"""
    tensor = as_array(tensor)
    _check_shape(model, tensor, 2)
    return _require(model, tensor, project_to_tracefree_ricci(model, tensor), "trace-free Ricci")


def check_cotton(model: CliffordModel, tensor: Any) -> ArrayT:
    """:raises SymmetryViolation: not a Cotton-York tensor"""
    tensor = as_array(tensor)
    _check_shape(model, tensor, 3)
    return _require(model, tensor, project_to_cotton(model, tensor), "Cotton-York")


def check_weyl(model: CliffordModel, tensor: Any) -> ArrayT:
    """:raises SymmetryViolation: not a Weyl tensor"""
    tensor = as_array(tensor)
    _check_shape(model, tensor, 4)
    return _require(model, tensor, project_to_weyl(model, tensor), "Weyl")


def _check_shape(model: CliffordModel, tensor: ArrayT, rank: int) -> None:
    if tensor.shape != (model.n,) * rank:
        raise SymmetryViolation(f"expected shape {(model.n,) * rank}; got {tensor.shape}")


def pi_ricci(i: Fraction | int, j: int, phi: Any, xi: PureSpinor) -> ArrayT:
    """Projection maps on trace-free Ricci tensors (levels -1 and 0)."""
    phi = as_array(phi)
    cell = (Fraction(i), j)
    if cell == (Fraction(-1), 0):
        return ein("aA,bB,ab->AB", xi.xi_up, xi.xi_up, phi)
    if cell == (Fraction(0), 0):
        return ein("aA,ab->bA", xi.xi_up, phi)
    raise UndefinedComponent(f"𝔉 has no projection map at {cell}")


def pi_cotton(i: Fraction | int | str, j: int, tensor: Any, xi: PureSpinor) -> ArrayT:
    """Projection maps on Cotton-York tensors (levels -3/2, -1/2 and 1/2)."""
    a = as_array(tensor)
    n = xi.model.n
    u, q, gam = xi.xi_up, xi.xi2_up, xi.gam
    cell = (Fraction(i), j)
    if cell == (Fraction(-3, 2), 0):
        return ein("aA,bB,cC,abc->ABC", u, u, u, a)
    if cell == (Fraction(-1, 2), 0):
        return ein("aA,abc,bcP->AP", u, a, q)
    if cell == (Fraction(-1, 2), 1):
        first = ein("bB,cC,abc->aBC", u, u, a)
        second = skew(ein("aPB,dC,bcP,dbc->aBC", gam, u, q, a), [1, 2])
        return first + second / (n - 2)
    if cell == (Fraction(-1, 2), 2):
        first = sym(ein("aA,bB,abc->cAB", u, u, a), [1, 2])
        second = sym(ein("cPA,dB,baP,dba->cAB", gam, u, q, a), [1, 2])
        return first + 3 * second / (2 * (n + 2))
    if cell == (Fraction(1, 2), 0):
        return ein("abc,bcP->aP", a, q)
    if cell == (Fraction(1, 2), 1):
        first = ein("cA,cab->abA", u, a)
        second = skew(ein("aPA,bcd,cdP->abA", gam, a, q), [0, 1])
        return first - second / (n - 2)
    if cell == (Fraction(1, 2), 2):
        first = sym(ein("abc,cA->abA", a, u), [0, 1])
        second = sym(ein("aPA,bcd,cdP->abA", gam, a, q), [0, 1])
        return first - 3 * second / (2 * (n + 2))
    raise UndefinedComponent(f"𝔄 has no projection map at {cell}")


def pi_weyl(i: Fraction | int, j: int, tensor: Any, xi: PureSpinor) -> ArrayT:
    """
    Projection maps on Weyl tensors (levels -2 to 1).

    :raises UndefinedComponent: ``(0, 2)`` for ``m <= 3`` or an unknown cell
    """
    c = as_array(tensor)
    m, n = xi.model.m, xi.model.n
    u, q, gam = xi.xi_up, xi.xi2_up, xi.gam
    cell = (Fraction(i), j)
    if cell == (Fraction(-2), 0):
        return ein("aA,bB,cC,dD,abcd->ABCD", u, u, u, u, c)
    if cell == (Fraction(-1), 0):
        return ein("aA,bB,cdP,abcd->ABP", u, u, q, c)
    if cell == (Fraction(-1), 1):
        first = ein("aA,bB,cC,abce->eABC", u, u, u, c)
        second = ein("aA,bB,cdP,abcd,ePC->eABC", u, u, q, c, gam)
        third = skew(ein("aC,bA,cdP,abcd,ePB->eABC", u, u, q, c, gam), [1, 2])
        return first + (second - third) / (n + 2)
    if cell == (Fraction(0), 0):
        return ein("abP,cdQ,abcd->PQ", q, q, c)
    if cell == (Fraction(0), 1):
        return ein("abP,cD,abcd->PdD", q, u, c) + ein("abP,ceQ,abce,dQD->PdD", q, q, c, gam) / n
    if cell in ((Fraction(0), 2), (Fraction(0), 3)):
        first = ein("aA,abcd,dD->AbcD", u, c, u)
        second = ein("aeP,aedb,cPA,dD->AbcD", q, c, gam, u)
        third = ein("aeP,aedf,dfQ,bPA,cQD->AbcD", q, c, q, gam, gam)
        if j == 2:
            if m <= 3:
                raise UndefinedComponent("ℭ_0^2 does not occur for m <= 3")
            return (
                skew(first, [1, 2])
                + skew(skew(second, [1, 2]), [0, 3]) / (n - 4)
                - skew(third, [1, 2]) / (2 * (n - 2) * (n - 4))
            )
        return (
            sym(first, [1, 2])
            - 3 * sym(sym(second, [1, 2]), [0, 3]) / (n + 4)
            - 3 * sym(third, [1, 2]) / (2 * (n + 2) * (n + 4))
        )
    if cell == (Fraction(1), 0):
        return ein("abP,abcd->Pcd", q, c)
    if cell == (Fraction(1), 1):
        first = ein("aB,abcd->Bbcd", u, c)
        second = ein("aeP,bPB,aecd->Bbcd", q, gam, c)
        third = skew(ein("aeP,aebc,dPB->Bbcd", q, c, gam), [2, 3])
        return first + (second - third) / (n + 2)
    raise UndefinedComponent(f"ℭ has no projection map at {cell}")


class CurvatureBundle:
    """
    Validated curvature data at a point.

    Missing pieces are ``None``; present pieces carry symmetry certificates
    (the residual of re-projecting onto their space).
    """

    def __init__(
        self,
        model: CliffordModel,
        weyl: Any = None,
        ricci: Any = None,
        scalar: complex | None = None,
        cotton: Any = None,
        riemann: Any = None,
    ):
        self.model = model
        self.weyl = check_weyl(model, weyl) if weyl is not None else None
        self.ricci = check_ricci(model, ricci) if ricci is not None else None
        self.scalar = scalar
        self.cotton = check_cotton(model, cotton) if cotton is not None else None
        self.riemann = as_array(riemann) if riemann is not None else None
        if self.riemann is not None:
            _require(model, self.riemann, algebraic_curvature_part(self.riemann), "Riemann")

    def certificates(self) -> Dictionary:
        model = self.model
        out = {}
        for name, projector in (
            ("weyl", project_to_weyl),
            ("ricci", project_to_tracefree_ricci),
            ("cotton", project_to_cotton),
        ):
            value = getattr(self, name)
            if value is not None:
                out[name] = float(np.linalg.norm(value - projector(model, value)))
        return Dictionary(out)


def _entry(model: CliffordModel, values: list[ArrayT], scale: float) -> Dictionary:
    residual = float(np.sqrt(sum(np.linalg.norm(v) ** 2 for v in values)))
    return Dictionary(residual=residual, holds=model.tol.vanishes(residual, scale))


def integrability_residuals(
    xi: PureSpinor,
    bundle: CurvatureBundle,
    zeta: Any = None,
) -> Dictionary:
    """
    Curvature conditions implied by differential conditions on a pure spinor field.

    Each entry reports a residual norm and whether it vanishes. Entries whose
    inputs are missing from ``bundle`` are omitted.
    """
    model = xi.model
    unit = xi.scaled(1 / np.linalg.norm(xi.components))
    c, phi, a, r = bundle.weyl, bundle.ricci, bundle.cotton, bundle.riemann
    out: dict[str, Any] = {}

    def pc(i: int, j: int) -> ArrayT:
        return pi_weyl(i, j, c, unit)

    if c is not None:
        scale = float(np.linalg.norm(c))
        out["foliating"] = _entry(model, [pc(-2, 0)], scale)
        out["strongly_foliating"] = _entry(model, [pc(-1, 0)], scale)
        out["null_zrm"] = _entry(model, [pc(-1, 0)], scale)
        gs = [pc(-1, 0), pc(-1, 1)]
        if a is not None:
            gs.append(pi_cotton(Fraction(-3, 2), 0, a, unit))
            scale = max(scale, float(np.linalg.norm(a)))
        out["goldberg_sachs"] = _entry(model, gs, scale)
        out["scalar_flat_weyl"] = _entry(model, [pc(0, 0)], float(np.linalg.norm(c)))
        out["ricci_weyl"] = _entry(model, [pc(0, 1)], float(np.linalg.norm(c)))

    recurrent: list[ArrayT] = []
    scale = 0.0
    if r is not None:
        recurrent.append(ein("aA,bB,abcd->ABcd", unit.xi_up, unit.xi_up, r))
        scale = max(scale, float(np.linalg.norm(r)))
    if phi is not None:
        recurrent.append(pi_ricci(-1, 0, phi, unit))
        scale = max(scale, float(np.linalg.norm(phi)))
    if c is not None:
        recurrent += [pc(-1, 0), pc(-1, 1)]
        if model.m > 3:
            recurrent.append(pc(0, 2))
        scale = max(scale, float(np.linalg.norm(c)))
    if recurrent:
        out["recurrent"] = _entry(model, recurrent, scale)

    parallel: list[ArrayT] = []
    if r is not None:
        parallel.append(ein("abcd,cdP->abP", r, unit.xi2_up))
    if phi is not None:
        parallel.append(pi_ricci(0, 0, phi, unit))
    if bundle.scalar is not None:
        parallel.append(np.array([bundle.scalar]))
    if c is not None:
        parallel.append(pc(1, 0))
    if parallel:
        out["parallel"] = _entry(model, parallel, max(scale, abs(bundle.scalar or 0.0)))

    if c is not None:
        twistor = [pc(1, 0)]
        if zeta is not None and a is not None:
            twistor.append(twistor_curvature_residual(unit, np.asarray(zeta) / np.linalg.norm(xi.components), c, a))
        out["twistor"] = _entry(model, twistor, max(float(np.linalg.norm(c)), float(np.linalg.norm(a)) if a is not None else 0.0))
    logger.debug("Integrability residuals: %s", {k: v.holds for k, v in out.items()})
    return Dictionary(out)


def twistor_curvature_residual(xi: PureSpinor, zeta: Any, weyl: ArrayT, cotton: ArrayT) -> ArrayT:
    """``C_abcd zeta^{cdC} - 2n A_cab xi^{cC}`` with ``zeta`` of the opposite chirality."""
    model = xi.model
    other = xi.chirality.opposite
    full = model.embed(zeta, other)
    chain = ein("bij,ajk,k->abi", model.gamma_up, model.gamma_up, full)
    zeta2 = 0.5 * (chain - chain.transpose(1, 0, 2))[:, :, model.masks(other)]
    return ein("abcd,cdC->abC", weyl, zeta2) - 2 * model.n * ein("cab,cC->abC", cotton, xi.xi_up)  # type: ignore[no-any-return]


PI_FUNCTIONS: dict[str, Callable[..., ArrayT]] = {
    "ricci": pi_ricci,
    "cotton": pi_cotton,
    "weyl": pi_weyl,
}
