"""
Arrows of the graded diagrams.

An arrow ``X_i^j -> X_{i-1}^k`` means the nilpotent part ``g_1`` maps the
piece ``X_{i-1}^k`` onto something with a nonzero ``X_i^j`` part. It is
certified by acting with random elements of ``g_1`` on random representatives
of the lower piece and evaluating the projection map of the upper one.
"""

from __future__ import annotations

from fractions import Fraction
from logging import Logger, getLogger

import numpy as np

from spinorlab.classification import FILTRATIONS, module_dims
from spinorlab.definitions import Dictionary, List, ListEntry, Space, cell_name
from spinorlab.parabolic import act, g_representative, random_g_component
from spinorlab.pure import DualPair
from spinorlab.representatives import random_component, representative

logger: Logger = getLogger(__name__)

#: Number of random trials behind each verdict.
ARROW_TRIALS = 20

CellT = tuple[Fraction, int]
f = Fraction

#: Arrows ``upper -> lower`` as drawn in the diagrams, and the least m for which each occurs.
EXPECTED_ARROWS: dict[Space, dict[tuple[CellT, CellT], int]] = {
    Space.LIE: {
        ((f(1), 0), (f(0), 0)): 2,
        ((f(1), 0), (f(0), 1)): 2,
        ((f(0), 0), (f(-1), 0)): 2,
        ((f(0), 1), (f(-1), 0)): 2,
    },
    Space.RICCI: {
        ((f(1), 0), (f(0), 0)): 2,
        ((f(0), 0), (f(-1), 0)): 2,
    },
    Space.COTTON: {
        ((f(3, 2), 0), (f(1, 2), 0)): 2,
        ((f(3, 2), 0), (f(1, 2), 1)): 2,
        ((f(3, 2), 0), (f(1, 2), 2)): 2,
        ((f(1, 2), 2), (f(-1, 2), 2)): 2,
        ((f(1, 2), 2), (f(-1, 2), 1)): 2,
        ((f(1, 2), 1), (f(-1, 2), 2)): 2,
        ((f(1, 2), 1), (f(-1, 2), 0)): 2,
        ((f(1, 2), 0), (f(-1, 2), 0)): 2,
        ((f(1, 2), 0), (f(-1, 2), 1)): 2,
        ((f(-1, 2), 2), (f(-3, 2), 0)): 2,
        ((f(-1, 2), 1), (f(-3, 2), 0)): 2,
        ((f(-1, 2), 0), (f(-3, 2), 0)): 2,
    },
    Space.WEYL: {
        ((f(2), 0), (f(1), 1)): 2,
        ((f(2), 0), (f(1), 0)): 2,
        ((f(1), 1), (f(0), 3)): 2,
        ((f(1), 1), (f(0), 2)): 2,
        ((f(1), 1), (f(0), 1)): 2,
        ((f(1), 0), (f(0), 0)): 2,
        ((f(1), 0), (f(0), 1)): 2,
        ((f(1), 0), (f(0), 2)): 2,
        ((f(0), 3), (f(-1), 1)): 2,
        ((f(0), 2), (f(-1), 1)): 2,
        ((f(0), 2), (f(-1), 0)): 2,
        ((f(0), 1), (f(-1), 1)): 2,
        ((f(0), 1), (f(-1), 0)): 2,
        ((f(0), 0), (f(-1), 0)): 2,
        ((f(-1), 1), (f(-2), 0)): 2,
        ((f(-1), 0), (f(-2), 0)): 2,
    },
    Space.TORSION: {
        ((f(-1, 2), 1), (f(-3, 2), 1)): 3,
        ((f(-1, 2), 1), (f(-3, 2), 0)): 4,
        ((f(-1, 2), 0), (f(-3, 2), 1)): 3,
        ((f(-1, 2), 0), (f(-3, 2), 0)): 3,
    },
}


def present_cells(space: Space | str, m: int) -> list[CellT]:
    """Pieces of nonzero dimension, top piece included."""
    return [cell for cell, dim in module_dims(space, m).items() if dim > 0]


def expected_arrows(space: Space | str, m: int) -> set[tuple[CellT, CellT]]:
    space = Space(space)
    cells = set(present_cells(space, m))
    return {
        edge for edge, least in EXPECTED_ARROWS[space].items() if m >= least and edge[0] in cells and edge[1] in cells
    }


def arrow_strength(space: Space | str, upper: CellT, lower: CellT, pair: DualPair, trials: int = ARROW_TRIALS, seed: int | None = None) -> float:
    """Largest relative size of the ``upper`` part of ``g_1 . lower`` over random trials."""
    space = Space(space)
    model = pair.model
    filtration = FILTRATIONS[space]
    xi = pair.xi.scaled(1 / np.linalg.norm(pair.xi.components))
    rng = np.random.default_rng(seed)
    strength = 0.0
    for _ in range(trials):
        element = representative(space, *lower, pair, random_component(space, model.m, *lower, rng))
        phi = g_representative(pair, 1, 0, random_g_component(model, 1, 0, rng))
        moved = act(model, phi, element)
        if upper[0] == filtration.top:
            value = moved
        else:
            value = filtration.pi(*upper, moved, xi)
        scale = float(np.linalg.norm(phi)) * float(np.linalg.norm(element))
        if scale:
            strength = max(strength, float(np.linalg.norm(value)) / scale)
    return strength


def certify_arrows(space: Space | str, pair: DualPair, trials: int = ARROW_TRIALS, seed: int | None = None) -> Dictionary:
    """
    Presence of every candidate arrow between adjacent levels.

    Every pair of pieces one level apart is tested; the report marks each
    candidate as present or absent and compares with the drawn diagram.
    """
    space = Space(space)
    model = pair.model
    cells = present_cells(space, model.m)
    expected = expected_arrows(space, model.m)
    entries = []
    for upper in cells:
        for lower in cells:
            if upper[0] - lower[0] != 1:
                continue
            strength = arrow_strength(space, upper, lower, pair, trials, seed)
            present = not model.tol.vanishes(strength, 1.0)
            entries.append(
                ListEntry(
                    upper=cell_name(space, *upper),
                    lower=cell_name(space, *lower),
                    strength=strength,
                    present=present,
                    expected=(upper, lower) in expected,
                )
            )
    arrows = List(entries, entry_class=ListEntry)
    agrees = all(entry.present == entry.expected for entry in arrows)
    if not agrees:
        logger.warning("Arrows of %s at m=%d differ from the drawn diagram", space.value, model.m)
    return Dictionary(space=space.value, m=model.m, arrows=arrows, agrees=agrees)
