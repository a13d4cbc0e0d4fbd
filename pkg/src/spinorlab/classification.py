"""
Filtrations of the curvature, Lie algebra and torsion modules relative to a
pure spinor: projection-map registry, dimension tables, stage bases and
classification reports.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from logging import Logger, getLogger
from typing import Any, Callable

import numpy as np

from spinorlab.clifford import CliffordModel
from spinorlab.curvature import (
    check_cotton,
    check_ricci,
    check_weyl,
    pi_cotton,
    pi_ricci,
    pi_weyl,
    project_to_cotton,
    project_to_tracefree_ricci,
    project_to_weyl,
)
from spinorlab.definitions import ArrayT, Dictionary, Space, cell_name, format_level
from spinorlab.exceptions import InconsistentVerdict
from spinorlab.parabolic import ZERO_LEVEL, check_skew, dim_g_components, g_projections, stabilizer_check
from spinorlab.pure import DualPair, PureSpinor
from spinorlab.tensor import kernel, numerical_rank, restricted_matrix, span_basis
from spinorlab.torsion import check_connection, dim_torsion_components, intrinsic_torsion, pi_torsion

logger: Logger = getLogger(__name__)

CellT = tuple[Fraction, int]
PiT = Callable[[Fraction, int, ArrayT, PureSpinor], ArrayT]


def _pi_lie(i: Fraction, j: int, phi: ArrayT, xi: PureSpinor) -> ArrayT:
    return g_projections(phi, xi)[(Fraction(i), j)]


@dataclass(frozen=True)
class Filtration:
    """
    Projection maps of one module, grouped by level.

    ``levels`` maps each level with projection maps to the component indices
    ``j`` at that level; ``top`` is the level of elements killed by all of them,
    or ``None`` when that stage is zero.
    """

    space: Space
    levels: dict[Fraction, tuple[int, ...]]
    top: Fraction | None
    pi: PiT

    def cells(self, m: int) -> list[CellT]:
        return [
            (i, j)
            for i, js in self.levels.items()
            for j in js
            if not (self.space is Space.WEYL and (i, j) == (Fraction(0), 2) and m <= 3)
        ]

    def cells_at(self, i: Fraction, m: int) -> list[CellT]:
        return [cell for cell in self.cells(m) if cell[0] == i]


FILTRATIONS: dict[Space, Filtration] = {
    Space.LIE: Filtration(Space.LIE, {Fraction(-1): (0,), Fraction(0): (0, 1)}, Fraction(1), _pi_lie),
    Space.RICCI: Filtration(Space.RICCI, {Fraction(-1): (0,), Fraction(0): (0,)}, Fraction(1), pi_ricci),
    Space.COTTON: Filtration(
        Space.COTTON,
        {Fraction(-3, 2): (0,), Fraction(-1, 2): (0, 1, 2), Fraction(1, 2): (0, 1, 2)},
        Fraction(3, 2),
        pi_cotton,
    ),
    Space.WEYL: Filtration(
        Space.WEYL,
        {Fraction(-2): (0,), Fraction(-1): (0, 1), Fraction(0): (0, 1, 2, 3), Fraction(1): (0, 1)},
        Fraction(2),
        pi_weyl,
    ),
    Space.TORSION: Filtration(
        Space.TORSION, {Fraction(-3, 2): (0, 1), Fraction(-1, 2): (0, 1)}, None, pi_torsion
    ),
}


def total_dim(space: Space | str, m: int) -> int:
    """
    Dimension of the whole module.

    >>> total_dim("weyl", 3), total_dim("cotton", 3), total_dim("ricci", 3)
    (84, 64, 20)
    """
    n = 2 * m
    return {
        Space.LIE: n * (n - 1) // 2,
        Space.RICCI: (2 * m - 1) * (m + 1),
        Space.COTTON: 8 * m * (m + 1) * (m - 1) // 3,
        Space.WEYL: m * (m + 1) * (2 * m + 1) * (2 * m - 3) // 3,
        Space.TORSION: m * m * (m - 1),
    }[Space(space)]


def module_dims(space: Space | str, m: int) -> dict[CellT, int]:
    """
    Dimensions of the irreducible pieces, keyed by ``(level, j)``.

    >>> sorted(module_dims("weyl", 3).values())
    [0, 1, 3, 3, 6, 6, 8, 15, 15, 27]
    """
    space = Space(space)
    f = Fraction
    if space is Space.LIE:
        return dim_g_components(m)
    if space is Space.TORSION:
        return dim_torsion_components(m)
    if space is Space.RICCI:
        sym = m * (m + 1) // 2
        return {(f(-1), 0): sym, (f(0), 0): m * m - 1, (f(1), 0): sym}
    if space is Space.COTTON:
        outer = m * (m * m - 1) // 3
        return {
            (f(-3, 2), 0): outer,
            (f(-1, 2), 0): m,
            (f(-1, 2), 1): m * (m - 2) * (m + 1) // 2,
            (f(-1, 2), 2): m * (m + 2) * (m - 1) // 2,
            (f(1, 2), 0): m,
            (f(1, 2), 1): m * (m - 2) * (m + 1) // 2,
            (f(1, 2), 2): m * (m + 2) * (m - 1) // 2,
            (f(3, 2), 0): outer,
        }
    outer = m * m * (m * m - 1) // 12
    middle = 0 if m == 2 else m * m * (m * m - 4) // 3
    return {
        (f(-2), 0): outer,
        (f(-1), 0): m * (m - 1) // 2,
        (f(-1), 1): middle,
        (f(0), 0): 1,
        (f(0), 1): 0 if m == 2 else m * m - 1,
        (f(0), 2): 0 if m <= 3 else m * m * (m + 1) * (m - 3) // 4,
        (f(0), 3): m * m * (m - 1) * (m + 3) // 4,
        (f(1), 0): m * (m - 1) // 2,
        (f(1), 1): middle,
        (f(2), 0): outer,
    }


def validate_element(space: Space | str, model: CliffordModel, tensor: Any) -> ArrayT:
    """
    :raises SymmetryViolation: curvature input lacks its symmetries
    :raises NotSkew: Lie algebra or connection input is not skew
    """
    return {
        Space.LIE: check_skew,
        Space.RICCI: check_ricci,
        Space.COTTON: check_cotton,
        Space.WEYL: check_weyl,
        Space.TORSION: check_connection,
    }[Space(space)](model, tensor)


def projection_residuals(space: Space | str, tensor: Any, xi: PureSpinor) -> dict[CellT, ArrayT]:
    """Values of every projection map of ``space`` on ``tensor``."""
    filtration = FILTRATIONS[Space(space)]
    return {cell: filtration.pi(*cell, tensor, xi) for cell in filtration.cells(xi.model.m)}


def classify(space: Space | str, tensor: Any, xi: PureSpinor) -> Dictionary:
    """
    Filtration level and diagram position of ``tensor`` relative to ``xi``.

    The level is the largest ``i`` such that every projection map below ``i``
    vanishes; the position lists the nonvanishing pieces at that level.

    :raises InconsistentVerdict: the level disagrees with an independent membership test
    """
    space = Space(space)
    model = xi.model
    tensor = validate_element(space, model, tensor)
    filtration = FILTRATIONS[space]
    unit = xi.scaled(1 / np.linalg.norm(xi.components))
    scale = float(np.linalg.norm(tensor))
    values = projection_residuals(space, tensor, unit)
    residuals = {cell_name(space, *cell): float(np.linalg.norm(v)) for cell, v in values.items()}
    vanishing = {name: model.tol.vanishes(r, scale) for name, r in residuals.items()}

    level: Fraction | float = ZERO_LEVEL
    position: list[str] = []
    if not model.tol.vanishes(scale):
        level = filtration.top if filtration.top is not None else ZERO_LEVEL
        for i in filtration.levels:
            alive = [cell_name(space, *cell) for cell in filtration.cells_at(i, model.m) if not vanishing[cell_name(space, *cell)]]
            if alive:
                level, position = i, alive
                break
        else:
            if filtration.top is not None:
                position = [cell_name(space, filtration.top, 0)]
    _cross_check(space, tensor, unit, level)
    report = Dictionary(
        space=space.value,
        level=level,
        level_name=format_level(level),
        position=" + ".join(position) if position else "0",
        surviving=position,
        residuals=residuals,
        vanishing=vanishing,
        norm=scale,
    )
    logger.debug("Classified %s element at level %s: %s", space.value, report.level_name, report.position)
    return report


def _cross_check(space: Space, tensor: ArrayT, xi: PureSpinor, level: Fraction | float) -> None:
    model = xi.model
    if space is Space.LIE and level != ZERO_LEVEL:
        in_stabilizer = stabilizer_check(tensor, xi)
        if in_stabilizer != (level >= 0):
            raise InconsistentVerdict(f"level {format_level(level)} but stabilizer test says {in_stabilizer}")
    if space is Space.TORSION:
        torsion = float(np.linalg.norm(intrinsic_torsion(tensor, xi)))
        zero = model.tol.vanishes(torsion, float(np.linalg.norm(tensor)))
        if zero != (level == ZERO_LEVEL):
            raise InconsistentVerdict(f"level {format_level(level)} but intrinsic torsion norm is {torsion:.3g}")


def _random_raw(shape: tuple[int, ...], rng: np.random.Generator) -> ArrayT:
    return rng.normal(size=shape) + 1j * rng.normal(size=shape)


def space_basis(space: Space | str, pair: DualPair, seed: int | None = None) -> ArrayT:
    """
    Orthonormal basis (columns, flattened) of ``space``.

    For the torsion module the basis spans a complement of the connections with
    values in the stabilizer of ``xi``.
    """
    space = Space(space)
    model = pair.model
    n, m = model.n, model.m
    rng = np.random.default_rng(seed)
    if space is Space.LIE:
        columns = []
        for a in range(n):
            for b in range(a + 1, n):
                phi = np.zeros((n, n), dtype=np.complex128)
                phi[a, b], phi[b, a] = 1, -1
                columns.append(phi.ravel())
        return span_basis(np.stack(columns, axis=1), model.tol)
    if space is Space.TORSION:
        columns = []
        for a in range(n):
            for k in range(m):
                for l in range(k + 1, m):
                    c = np.zeros((m, m), dtype=np.complex128)
                    c[k, l], c[l, k] = 1, -1
                    gamma = np.zeros((n, n, n), dtype=np.complex128)
                    gamma[a] = pair.Y @ c @ pair.Y.T
                    columns.append(gamma.ravel())
        return span_basis(np.stack(columns, axis=1), model.tol)
    projector, rank = {
        Space.RICCI: (project_to_tracefree_ricci, 2),
        Space.COTTON: (project_to_cotton, 3),
        Space.WEYL: (project_to_weyl, 4),
    }[space]
    samples = total_dim(space, m) + 4
    columns = [projector(model, _random_raw((n,) * rank, rng)).ravel() for _ in range(samples)]
    return span_basis(np.stack(columns, axis=1), model.tol)


def _element_map(space: Space, xi: PureSpinor, cells: list[CellT]) -> Callable[[ArrayT], ArrayT]:
    filtration = FILTRATIONS[space]
    shape = (xi.model.n,) * space.tensor_rank

    def evaluate(flat: ArrayT) -> ArrayT:
        tensor = flat.reshape(shape)
        return np.concatenate([np.ravel(filtration.pi(*cell, tensor, xi)) for cell in cells])

    return evaluate


def stage_bases(space: Space | str, pair: DualPair, seed: int | None = None) -> dict[Fraction, ArrayT]:
    """Bases of the filtration stages, each the kernel of the maps one level down."""
    space = Space(space)
    filtration = FILTRATIONS[space]
    model = pair.model
    xi = pair.xi.scaled(1 / np.linalg.norm(pair.xi.components))
    current = space_basis(space, pair, seed)
    levels = list(filtration.levels)
    stages = {levels[0]: current}
    for position, i in enumerate(levels):
        matrix = restricted_matrix(_element_map(space, xi, filtration.cells_at(i, model.m)), current)
        current = current @ kernel(matrix, model.tol)
        following = levels[position + 1] if position + 1 < len(levels) else filtration.top
        stages[following if following is not None else Fraction(levels[-1] + 1)] = current
    return stages


def rank_table(space: Space | str, pair: DualPair, seed: int | None = None) -> Dictionary:
    """
    Dimensions of the irreducible pieces measured as numerical ranks.

    Each ``Pi_i^j`` is restricted to the stage of level ``i``; the top piece is
    measured as the dimension of the last stage.
    """
    space = Space(space)
    filtration = FILTRATIONS[space]
    model = pair.model
    xi = pair.xi.scaled(1 / np.linalg.norm(pair.xi.components))
    stages = stage_bases(space, pair, seed)
    measured: dict[CellT, int] = {}
    for cell in filtration.cells(model.m):
        matrix = restricted_matrix(_element_map(space, xi, [cell]), stages[cell[0]])
        measured[cell] = numerical_rank(matrix, model.tol) if matrix.size else 0
    if filtration.top is not None:
        measured[(filtration.top, 0)] = stages[filtration.top].shape[1]
    expected = {cell: dim for cell, dim in module_dims(space, model.m).items() if cell in measured}
    logger.debug("Rank table for %s at m=%d: %s", space.value, model.m, measured)
    return Dictionary(
        measured={cell_name(space, *cell): dim for cell, dim in measured.items()},
        expected={cell_name(space, *cell): dim for cell, dim in expected.items()},
        total=sum(measured.values()),
        expected_total=total_dim(space, model.m),
        agrees=measured == expected and sum(measured.values()) == total_dim(space, model.m),
    )
