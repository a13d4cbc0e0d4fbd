"""
The orthogonal Lie algebra relative to a pure spinor: brackets, derivations,
the filtration ``g^1 ⊂ g^0 ⊂ g^{-1}``, its projection maps and graded
representatives.
"""

from __future__ import annotations

from fractions import Fraction
from logging import Logger, getLogger
from typing import Any

import numpy as np

from spinorlab.clifford import CliffordModel
from spinorlab.definitions import ArrayT, Dictionary
from spinorlab.exceptions import BadComponentSymmetry, NotSkew, UndefinedComponent
from spinorlab.pure import DualPair, PureSpinor

logger: Logger = getLogger(__name__)

#: Level reported for the zero element.
ZERO_LEVEL = float("inf")


def ein(spec: str, *operands: Any) -> ArrayT:
    return np.einsum(spec, *operands, optimize=True)  # type: ignore[no-any-return]


def as_array(value: Any) -> ArrayT:
    return np.asarray(getattr(value, "components", value), dtype=np.complex128)


def check_skew(model: CliffordModel, phi: Any) -> ArrayT:
    """
    :raises NotSkew: ``phi`` is not a skew 2-tensor
    """
    phi = as_array(phi)
    if phi.shape != (model.n, model.n):
        raise NotSkew(f"expected an {model.n}x{model.n} skew tensor; got shape {phi.shape}")
    if not model.tol.vanishes(float(np.linalg.norm(phi + phi.T)), float(np.linalg.norm(phi))):
        raise NotSkew("tensor is not skew")
    return phi


def lie_bracket(model: CliffordModel, phi: Any, psi: Any) -> ArrayT:
    """
    Bracket of two skew 2-tensors, matched to the commutator of their spinor actions.

    >>> import numpy as np
    >>> from spinorlab import build_model
    >>> model = build_model(2)
    >>> phi = np.zeros((4, 4)); phi[0, 1], phi[1, 0] = 1, -1
    >>> bool(np.allclose(lie_bracket(model, phi, phi), 0))
    True
    """
    phi, psi = as_array(phi), as_array(psi)
    return psi @ model.ginv @ phi - phi @ model.ginv @ psi  # type: ignore[no-any-return]


def act(model: CliffordModel, phi: Any, tensor: Any) -> ArrayT:
    """Derivation action of ``phi`` on every (lower) vector index of ``tensor``."""
    tensor = as_array(tensor)
    matrix = model.ginv @ as_array(phi)
    result = np.zeros_like(tensor)
    for axis in range(tensor.ndim):
        moved = np.tensordot(tensor, matrix, axes=([axis], [0]))
        result += np.moveaxis(moved, -1, axis)
    return result


def g_projections(phi: Any, xi: PureSpinor) -> dict[tuple[Fraction, int], ArrayT]:
    """
    Projection maps whose kernels cut out the filtration of 𝔤.

    ``(-1, 0)`` is ``xi^{aA} xi^{bB} phi_ab``; ``(0, 0)`` is ``xi^{abA'} phi_ab``
    and ``(0, 1)`` is ``xi^{cA} phi_cb + (1/n) gamma_{bC'}^A xi^{cdC'} phi_cd``.
    """
    model = xi.model
    phi = as_array(phi)
    n = model.n
    return {
        (Fraction(-1), 0): ein("aA,bB,ab->AB", xi.xi_up, xi.xi_up, phi),
        (Fraction(0), 0): ein("abP,ab->P", xi.xi2_up, phi),
        (Fraction(0), 1): ein("cA,cb->bA", xi.xi_up, phi) + ein("bPA,cdP,cd->bA", xi.gam, xi.xi2_up, phi) / n,
    }


def g_filtration_level(phi: Any, xi: PureSpinor) -> Fraction | float:
    """
    Largest ``i`` with ``phi`` in ``g^i``; ``inf`` for the zero element.

    :raises NotSkew: ``phi`` is not skew
    """
    model = xi.model
    phi = check_skew(model, phi)
    scale = float(np.linalg.norm(phi))
    if model.tol.vanishes(scale):
        return ZERO_LEVEL
    unit = xi.scaled(1 / np.linalg.norm(xi.components))
    values = g_projections(phi, unit)
    if not model.tol.vanishes(float(np.linalg.norm(values[(Fraction(-1), 0)])), scale):
        return Fraction(-1)
    if any(not model.tol.vanishes(float(np.linalg.norm(values[(Fraction(0), j)])), scale) for j in (0, 1)):
        return Fraction(0)
    return Fraction(1)


def stabilizer_check(phi: Any, xi: PureSpinor) -> bool:
    """Whether the spinor action of ``phi`` maps ``xi`` into its own span."""
    model = xi.model
    phi = check_skew(model, phi)
    full = xi.full / np.linalg.norm(xi.full)
    image = model.spin_action(phi) @ full
    residual = image - full * (full.conj() @ image)
    return model.tol.vanishes(float(np.linalg.norm(residual)), float(np.linalg.norm(phi)))


def g_representative(pair: DualPair, i: int, j: int, component: Any) -> ArrayT:
    """
    Element of the graded piece ``g_i^j`` built from adapted legs.

    ``component`` is a skew ``m x m`` matrix for ``i = +-1``, ignored for the
    centre ``(0, 0)`` and a trace-free ``m x m`` matrix for ``(0, 1)``.

    :raises BadComponentSymmetry: the component lacks the required property
    :raises UndefinedComponent: no such graded piece
    """
    model = pair.model
    c = np.asarray(component, dtype=np.complex128) if component is not None else None
    scale = float(np.linalg.norm(c)) if c is not None else 1.0
    if i in (1, -1) and j == 0:
        if not model.tol.vanishes(float(np.linalg.norm(c + c.T)), scale):  # type: ignore[operator,union-attr]
            raise BadComponentSymmetry("component must be skew")
        legs = pair.X if i == 1 else pair.Y
        return legs @ c @ legs.T  # type: ignore[no-any-return]
    if (i, j) == (0, 0):
        return pair.omega
    if (i, j) == (0, 1):
        if not model.tol.vanishes(abs(np.trace(c)), scale):
            raise BadComponentSymmetry("component must be trace-free")
        half = pair.X @ c @ pair.Y.T
        return half - half.T  # type: ignore[no-any-return]
    raise UndefinedComponent(f"𝔤 has no component ({i}, {j})")


def random_g_component(model: CliffordModel, i: int, j: int, rng: np.random.Generator) -> ArrayT | None:
    m = model.m
    raw = rng.normal(size=(m, m)) + 1j * rng.normal(size=(m, m))
    if j == 0 and i != 0:
        return raw - raw.T
    if (i, j) == (0, 1):
        return raw - np.trace(raw) / m * np.eye(m)
    return None


def dim_g_components(m: int) -> dict[tuple[Fraction, int], int]:
    """
    Dimensions of the irreducible pieces of 𝔤.

    >>> sorted(dim_g_components(3).values())
    [1, 3, 3, 8]
    """
    half = m * (m - 1) // 2
    return {
        (Fraction(-1), 0): half,
        (Fraction(0), 0): 1,
        (Fraction(0), 1): m * m - 1,
        (Fraction(1), 0): half,
    }


def grading_check(pair: DualPair, phi: Any) -> Dictionary:
    """Eigenvalue of the grading element on ``phi`` under the bracket, if ``phi`` is an eigenvector."""
    model = pair.model
    phi = as_array(phi)
    image = lie_bracket(model, pair.grading_element, phi)
    scale = float(np.vdot(phi, phi).real)
    value = complex(np.vdot(phi, image) / scale) if scale else 0j
    residual = float(np.linalg.norm(image - value * phi))
    return Dictionary(eigenvalue=value, residual=residual)
