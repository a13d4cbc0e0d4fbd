"""
Elements of prescribed graded pieces, assembled from the legs of a dual pair.

A representative is the leading leg term of the piece, contracted with a
component array in the adapted frame, then projected onto its space. Negative
levels are the mirror images obtained by interchanging the roles of the pure
spinor and its dual.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cache
from logging import Logger, getLogger
from typing import Any, Callable

import numpy as np

from spinorlab.clifford import build_model
from spinorlab.curvature import algebraic_curvature_part, project_to_cotton, project_to_tracefree_ricci, project_to_weyl
from spinorlab.definitions import ArrayT, Space
from spinorlab.exceptions import BadComponentSymmetry, UndefinedComponent
from spinorlab.parabolic import dim_g_components, ein, g_representative, random_g_component
from spinorlab.pure import DualPair
from spinorlab.tensor import kernel, skew, stack_columns
from spinorlab.torsion import dim_torsion_components, random_torsion_component, torsion_representative

logger: Logger = getLogger(__name__)

ConstraintT = Callable[[ArrayT], ArrayT]
BuilderT = Callable[[ArrayT, ArrayT, ArrayT], ArrayT]


@dataclass(frozen=True)
class ComponentSpec:
    """Leading leg term of one graded piece and the constraints on its component."""

    rank: int
    constraints: tuple[ConstraintT, ...]
    build: BuilderT


def _skew_in(a: int, b: int) -> ConstraintT:
    return lambda c: c + np.swapaxes(c, a, b)


def _sym_in(a: int, b: int) -> ConstraintT:
    return lambda c: c - np.swapaxes(c, a, b)


def _trace(spec: str) -> ConstraintT:
    return lambda c: np.einsum(spec, c)


def _no_totally_skew(c: ArrayT) -> ArrayT:
    return skew(c, [0, 1, 2])


def _curvature_like(c: ArrayT) -> ArrayT:
    return c - algebraic_curvature_part(c)


def _omega(x: ArrayT, y: ArrayT) -> ArrayT:
    return x @ y.T - y @ x.T  # type: ignore[no-any-return]


def _omega_product(omega: ArrayT, form: ArrayT) -> ArrayT:
    """``omega_ab F_cd + F_ab omega_cd - 2 omega_[a|[c F_d]|b]``."""
    cross = skew(skew(ein("ac,db->abcd", omega, form), [0, 1]), [2, 3])
    return ein("ab,cd->abcd", omega, form) + ein("ab,cd->abcd", form, omega) - 2 * cross  # type: ignore[no-any-return]


def _cotton_vector(x: ArrayT, y: ArrayT, v: ArrayT) -> ArrayT:
    vector = x @ v
    omega = _omega(x, y)
    return (  # type: ignore[no-any-return]
        ein("a,bc->abc", vector, omega) - 0.5 * (ein("b,ca->abc", vector, omega) - ein("c,ba->abc", vector, omega))
    )


_RICCI: dict[tuple[Fraction, int], ComponentSpec] = {
    (Fraction(1), 0): ComponentSpec(2, (_sym_in(0, 1),), lambda x, y, c: x @ c @ x.T),
    (Fraction(0), 0): ComponentSpec(2, (_trace("kk->"),), lambda x, y, c: x @ c @ y.T + y @ c.T @ x.T),
}

_COTTON: dict[tuple[Fraction, int], ComponentSpec] = {
    (Fraction(3, 2), 0): ComponentSpec(
        3, (_skew_in(1, 2), _no_totally_skew), lambda x, y, c: ein("ak,bl,cp,klp->abc", x, x, x, c)
    ),
    (Fraction(1, 2), 0): ComponentSpec(1, (), _cotton_vector),
    (Fraction(1, 2), 1): ComponentSpec(
        3, (_skew_in(0, 1), _trace("klk->l")), lambda x, y, c: ein("bk,cl,ap,klp->abc", x, x, y, c)
    ),
    (Fraction(1, 2), 2): ComponentSpec(
        3, (_sym_in(0, 1), _trace("klk->l")), lambda x, y, c: ein("ak,bl,cp,klp->abc", x, x, y, c)
    ),
}

_WEYL: dict[tuple[Fraction, int], ComponentSpec] = {
    (Fraction(2), 0): ComponentSpec(4, (_curvature_like,), lambda x, y, c: ein("ak,bl,cp,dq,klpq->abcd", x, x, x, x, c)),
    (Fraction(1), 1): ComponentSpec(
        4,
        (_skew_in(0, 1), _no_totally_skew, _trace("klpp->kl"), _trace("klpk->lp")),
        lambda x, y, c: ein("ak,bl,cp,dq,klpq->abcd", x, x, x, y, c),
    ),
    (Fraction(1), 0): ComponentSpec(2, (_skew_in(0, 1),), lambda x, y, c: _omega_product(_omega(x, y), x @ c @ x.T)),
    (Fraction(0), 0): ComponentSpec(0, (), lambda x, y, c: _omega_product(_omega(x, y), _omega(x, y))),
    (Fraction(0), 1): ComponentSpec(
        2, (_trace("kk->"),), lambda x, y, c: _omega_product(_omega(x, y), x @ c @ y.T - y @ c.T @ x.T)
    ),
    (Fraction(0), 2): ComponentSpec(
        4,
        (_skew_in(0, 1), _skew_in(2, 3), _trace("klkq->lq")),
        lambda x, y, c: ein("ak,bl,cp,dq,klpq->abcd", x, x, y, y, c),
    ),
    (Fraction(0), 3): ComponentSpec(
        4,
        (_sym_in(0, 1), _sym_in(2, 3), _trace("klkq->lq")),
        lambda x, y, c: ein("ak,cl,dp,bq,klpq->abcd", x, x, y, y, c),
    ),
}

_SPECS: dict[Space, dict[tuple[Fraction, int], ComponentSpec]] = {
    Space.RICCI: _RICCI,
    Space.COTTON: _COTTON,
    Space.WEYL: _WEYL,
}

_PROJECTORS = {
    Space.RICCI: project_to_tracefree_ricci,
    Space.COTTON: project_to_cotton,
    Space.WEYL: project_to_weyl,
}


def _lookup(space: Space, m: int, i: Fraction, j: int) -> tuple[ComponentSpec, bool]:
    if space is Space.WEYL and (i, j) == (Fraction(0), 2) and m <= 3:
        raise UndefinedComponent("ℭ_0^2 does not occur for m <= 3")
    mirrored = i < 0
    key = (-i if mirrored else i, j)
    spec = _SPECS[space].get(key)
    if spec is None or (i == 0 and mirrored):
        raise UndefinedComponent(f"{space.symbol} has no component ({i}, {j})")
    return spec, mirrored


@cache
def component_basis(space: Space, m: int, i: Fraction, j: int) -> ArrayT:
    """Orthonormal basis (columns, flattened) of the admissible component arrays of one piece."""
    spec, _ = _lookup(Space(space), m, Fraction(i), j)
    size = m**spec.rank
    if not spec.constraints:
        return np.eye(size, dtype=np.complex128)
    shape = (m,) * spec.rank
    columns = []
    for k in range(size):
        unit = np.zeros(size, dtype=np.complex128)
        unit[k] = 1
        array = unit.reshape(shape)
        columns.append(np.concatenate([np.ravel(f(array)) for f in spec.constraints]))
    return kernel(np.stack(columns, axis=1))


def _check_component(space: Space, m: int, i: Fraction, j: int, component: ArrayT) -> None:
    spec, _ = _lookup(space, m, i, j)
    if component.shape != (m,) * spec.rank:
        raise BadComponentSymmetry(f"component must have shape {(m,) * spec.rank}; got {component.shape}")
    scale = float(np.linalg.norm(component)) or 1.0
    for constraint in spec.constraints:
        if float(np.linalg.norm(constraint(component))) > 1e-9 * scale:
            raise BadComponentSymmetry(f"component of {space.symbol}_{i}^{j} violates its symmetry or trace condition")


def random_component(space: Space | str, m: int, i: Fraction | int | str, j: int, rng: np.random.Generator) -> ArrayT | None:
    """Random admissible component array for one graded piece."""
    space, cell = Space(space), (Fraction(i), j)
    if space is Space.LIE:
        return random_g_component(build_model(m), int(cell[0]), j, rng)
    if space is Space.TORSION:
        return random_torsion_component(m, *cell, rng)
    spec, _ = _lookup(space, m, *cell)
    if spec.rank == 0:
        return None
    basis = component_basis(space, m, *cell)
    coefficients = rng.normal(size=basis.shape[1]) + 1j * rng.normal(size=basis.shape[1])
    return (basis @ coefficients).reshape((m,) * spec.rank)  # type: ignore[no-any-return]


def representative(space: Space | str, i: Fraction | int | str, j: int, pair: DualPair, component: Any = None) -> ArrayT:
    """
    Element of ``space`` whose graded part is the piece ``(i, j)``.

    :raises BadComponentSymmetry: the component lacks the required symmetries
    :raises UndefinedComponent: the piece does not exist for this ``m``
    """
    space, cell = Space(space), (Fraction(i), j)
    m = pair.model.m
    if space is Space.LIE:
        if cell not in dim_g_components(m):
            raise UndefinedComponent(f"𝔤 has no component {cell}")
        return g_representative(pair, int(cell[0]), j, component)
    if space is Space.TORSION:
        return torsion_representative(pair, *cell, component)
    spec, mirrored = _lookup(space, m, *cell)
    x, y = pair.swapped() if mirrored else (pair.X, pair.Y)
    values = np.zeros(()) if spec.rank == 0 else np.asarray(component, dtype=np.complex128)
    if spec.rank:
        _check_component(space, m, *cell, values)
    raw = spec.build(x, y, values)
    return _PROJECTORS[space](pair.model, raw)


def representative_map(space: Space | str, i: Fraction | int | str, j: int, pair: DualPair) -> ArrayT:
    """Matrix of ``component -> representative`` on :func:`component_basis` (columns flattened)."""
    space, cell = Space(space), (Fraction(i), j)
    m = pair.model.m
    if space in (Space.LIE, Space.TORSION):
        rng = np.random.default_rng(0)
        size = dim_g_components(m)[cell] if space is Space.LIE else dim_torsion_components(m)[cell]
        # oversample so the image is reached with probability one
        samples = [representative(space, *cell, pair, random_component(space, m, *cell, rng)) for _ in range(size + 2)]
        return stack_columns(samples)
    spec, _ = _lookup(space, m, *cell)
    if spec.rank == 0:
        return stack_columns([representative(space, *cell, pair)])
    basis = component_basis(space, m, *cell)
    return stack_columns(representative(space, *cell, pair, basis[:, k].reshape((m,) * spec.rank)) for k in range(basis.shape[1]))
