"""
Dense complex tensors and the linear algebra every other module builds on.

Tensors are immutable :class:`DenseTensor` values carrying per-index roles.
Rank and subspace computations are singular value based and guard against
decisions too close to the cutoff by raising
:class:`~spinorlab.exceptions.ToleranceAmbiguous`.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from functools import cache
from itertools import permutations
from logging import Logger, getLogger
from typing import Any

import numpy as np
import numpy.typing as npt
import scipy.linalg

from spinorlab.definitions import ArrayT, IndexRole
from spinorlab.exceptions import (
    ExtentMismatch,
    RoleMismatch,
    ToleranceAmbiguous,
    ValidationError,
)
from spinorlab.tolerance import AMBIGUITY_FACTOR, DEFAULT_TOLERANCE, ToleranceContext

logger: Logger = getLogger(__name__)


class DenseTensor:
    """
    Dense complex multi-index array with index-role metadata.

    :param components: array-like of complex values; copied and frozen
    :param roles: one :class:`~spinorlab.definitions.IndexRole` per index
    :param tol: tolerance context used by predicates on this tensor

    :Usage:
        >>> import numpy as np
        >>> from spinorlab import DenseTensor, IndexRole
        >>> t = DenseTensor(np.eye(3), [IndexRole.VECTOR_UP, IndexRole.VECTOR_DOWN])
        >>> t.shape
        (3, 3)
    """

    __slots__ = ("_components", "_roles", "_tol")

    def __init__(
        self,
        components: Any,
        roles: Sequence[IndexRole | str],
        tol: ToleranceContext | None = None,
    ):
        array = np.array(components, dtype=np.complex128)
        roles = tuple(IndexRole(role) for role in roles)
        if len(roles) != array.ndim:
            raise RoleMismatch(f"{len(roles)} roles given for a tensor with {array.ndim} indices")
        array.setflags(write=False)
        self._components: ArrayT = array
        self._roles: tuple[IndexRole, ...] = roles
        self._tol = tol or DEFAULT_TOLERANCE

    @classmethod
    def from_flat(
        cls,
        shape: Sequence[int],
        roles: Sequence[IndexRole | str],
        values: Sequence[complex],
        tol: ToleranceContext | None = None,
    ) -> DenseTensor:
        """Build from row-major flat values."""
        if int(np.prod(shape, dtype=int)) != len(values):
            raise ExtentMismatch(f"shape {tuple(shape)} needs {int(np.prod(shape))} values; got {len(values)}")
        return cls(np.asarray(values, dtype=np.complex128).reshape(tuple(shape)), roles, tol)

    @property
    def components(self) -> ArrayT:
        return self._components

    @property
    def roles(self) -> tuple[IndexRole, ...]:
        return self._roles

    @property
    def shape(self) -> tuple[int, ...]:
        return self._components.shape

    @property
    def tol(self) -> ToleranceContext:
        return self._tol

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self._components))

    def flat(self) -> ArrayT:
        """Row-major flat component vector."""
        return self._components.ravel()

    def is_zero(self, scale: float = 0.0) -> bool:
        return self._tol.vanishes(self.norm, scale)

    def with_components(self, components: Any) -> DenseTensor:
        return DenseTensor(components, self._roles, self._tol)

    def __array__(self, dtype: Any = None, copy: Any = None) -> ArrayT:
        return self._components if dtype is None else self._components.astype(dtype)

    def __add__(self, other: DenseTensor) -> DenseTensor:
        _check_same_layout(self, other)
        return self.with_components(self._components + other._components)

    def __sub__(self, other: DenseTensor) -> DenseTensor:
        _check_same_layout(self, other)
        return self.with_components(self._components - other._components)

    def __mul__(self, scalar: complex) -> DenseTensor:
        return self.with_components(self._components * scalar)

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DenseTensor):
            return NotImplemented
        return self._roles == other._roles and np.array_equal(self._components, other._components)

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        roles = ", ".join(role.value for role in self._roles)
        return f"DenseTensor(shape={self.shape}, roles=[{roles}], norm={self.norm:.3g})"


def _check_same_layout(left: DenseTensor, right: DenseTensor) -> None:
    if left.roles != right.roles:
        raise RoleMismatch(f"roles differ: {left.roles} vs {right.roles}")
    if left.shape != right.shape:
        raise ExtentMismatch(f"shapes differ: {left.shape} vs {right.shape}")


def outer(left: DenseTensor, right: DenseTensor) -> DenseTensor:
    """Tensor product; indices of ``left`` come first."""
    return DenseTensor(
        np.multiply.outer(left.components, right.components),
        left.roles + right.roles,
        left.tol,
    )


def contract(t: DenseTensor, i: int, j: int) -> DenseTensor:
    """
    Trace over the index pair ``(i, j)``.

    The roles must be a dual pair (vector up/down, spinor/dual spinor of the
    same chirality) of equal extent.
    """
    if i == j:
        raise RoleMismatch("cannot contract an index with itself")
    if t.roles[i].dual is not t.roles[j] or t.roles[i] is IndexRole.SCALAR:
        raise RoleMismatch(f"roles {t.roles[i].value} and {t.roles[j].value} do not contract")
    if t.shape[i] != t.shape[j]:
        raise ExtentMismatch(f"extents {t.shape[i]} and {t.shape[j]} differ")
    roles = [role for k, role in enumerate(t.roles) if k not in (i, j)]
    return DenseTensor(np.trace(t.components, axis1=i, axis2=j), roles, t.tol)


@cache
def permutation_signs(p: int) -> tuple[tuple[tuple[int, ...], int], ...]:
    """All permutations of ``range(p)`` with their signs."""
    result = []
    for perm in permutations(range(p)):
        inversions = sum(1 for x in range(p) for y in range(x + 1, p) if perm[x] > perm[y])
        result.append((perm, -1 if inversions % 2 else 1))
    return tuple(result)


def permutation_sign(perm: Sequence[int]) -> int:
    """Sign of an arbitrary sequence of distinct integers, ``0`` on repeats."""
    if len(set(perm)) != len(perm):
        return 0
    inversions = sum(1 for x in range(len(perm)) for y in range(x + 1, len(perm)) if perm[x] > perm[y])
    return -1 if inversions % 2 else 1


def _bracket(array: ArrayT, axes: Sequence[int], skew: bool) -> ArrayT:
    axes = list(axes)
    if len(axes) < 2:
        return np.array(array, dtype=np.complex128)
    if len(set(axes)) != len(axes):
        raise ValidationError(f"repeated axes {axes}")
    result = np.zeros_like(array, dtype=np.complex128)
    identity = list(range(array.ndim))
    for perm, sign in permutation_signs(len(axes)):
        order = list(identity)
        for source, target in zip(axes, perm):
            order[source] = axes[target]
        result += (sign if skew else 1) * np.transpose(array, order)
    return result / len(permutation_signs(len(axes)))


def skew(array: ArrayT, axes: Sequence[int]) -> ArrayT:
    """Weight-one antisymmetrization of a raw array over ``axes``."""
    return _bracket(array, axes, skew=True)


def sym(array: ArrayT, axes: Sequence[int]) -> ArrayT:
    """Weight-one symmetrization of a raw array over ``axes``."""
    return _bracket(array, axes, skew=False)


def _check_bracket_indices(t: DenseTensor, indices: Sequence[int]) -> None:
    roles = {t.roles[k] for k in indices}
    extents = {t.shape[k] for k in indices}
    if len(roles) > 1:
        raise RoleMismatch(f"indices {list(indices)} have roles {sorted(r.value for r in roles)}")
    if len(extents) > 1:
        raise ExtentMismatch(f"indices {list(indices)} have extents {sorted(extents)}")


def antisymmetrize(t: DenseTensor, indices: Sequence[int]) -> DenseTensor:
    """
    Projector onto the totally skew part in ``indices`` (includes ``1/p!``).

    >>> import numpy as np
    >>> from spinorlab import DenseTensor, IndexRole
    >>> e = np.eye(2)
    >>> t = DenseTensor(np.outer(e[0], e[1]), [IndexRole.VECTOR_UP] * 2)
    >>> antisymmetrize(t, [0, 1]).components.real.tolist()
    [[0.0, 0.5], [-0.5, 0.0]]
    """
    _check_bracket_indices(t, indices)
    return t.with_components(skew(t.components, indices))


def symmetrize(t: DenseTensor, indices: Sequence[int]) -> DenseTensor:
    """Projector onto the totally symmetric part in ``indices`` (includes ``1/p!``)."""
    _check_bracket_indices(t, indices)
    return t.with_components(sym(t.components, indices))


def _as_matrix(matrix: DenseTensor | ArrayT | Any) -> ArrayT:
    array = matrix.components if isinstance(matrix, DenseTensor) else np.asarray(matrix, dtype=np.complex128)
    if array.ndim != 2:
        raise ExtentMismatch(f"expected a two-index tensor; got {array.ndim} indices")
    return array


def singular_values(matrix: DenseTensor | ArrayT | Any) -> npt.NDArray[np.float64]:
    array = _as_matrix(matrix)
    if 0 in array.shape:
        return np.zeros(0)
    return scipy.linalg.svdvals(array)


def _rank_from_singular_values(values: Any, tol: ToleranceContext) -> int:
    if len(values) == 0 or values[0] <= tol.eps_abs:
        return 0
    cutoff = tol.svd_rank_cutoff * values[0]
    rank = int(np.sum(values > cutoff))
    near = values[(values > cutoff / AMBIGUITY_FACTOR) & (values < cutoff * AMBIGUITY_FACTOR)]
    if len(near):
        logger.debug("Singular values %s within a factor %s of cutoff %.3g", near, AMBIGUITY_FACTOR, cutoff)
        if tol.raise_on_ambiguous_rank:
            raise ToleranceAmbiguous(
                f"singular value {near[0]:.3g} is within a factor {AMBIGUITY_FACTOR:g} of the cutoff {cutoff:.3g}"
            )
    return rank


def numerical_rank(matrix: DenseTensor | ArrayT | Any, tol: ToleranceContext | None = None) -> int:
    """
    Count of singular values above ``svd_rank_cutoff`` times the largest one.

    >>> import numpy as np
    >>> numerical_rank(np.eye(5))
    5
    """
    if tol is None and isinstance(matrix, DenseTensor):
        tol = matrix.tol
    tol = tol or DEFAULT_TOLERANCE
    return _rank_from_singular_values(singular_values(matrix), tol)


def _svd(array: ArrayT) -> tuple[ArrayT, Any, ArrayT]:
    return scipy.linalg.svd(array, full_matrices=True, lapack_driver="gesvd")  # type: ignore[no-any-return]


def span_basis(vectors: DenseTensor | ArrayT | Any, tol: ToleranceContext | None = None) -> ArrayT:
    """
    Orthonormal basis (as columns) of the span of the columns of ``vectors``.
    """
    array = _as_matrix(vectors)
    tol = tol or DEFAULT_TOLERANCE
    if 0 in array.shape:
        return np.zeros((array.shape[0], 0), dtype=np.complex128)
    u, s, _ = _svd(array)
    rank = _rank_from_singular_values(s, tol)
    return np.ascontiguousarray(u[:, :rank])


def kernel(matrix: DenseTensor | ArrayT | Any, tol: ToleranceContext | None = None) -> ArrayT:
    """
    Orthonormal basis (as columns) of the kernel of ``matrix``.

    >>> import numpy as np
    >>> kernel(np.eye(3)).shape
    (3, 0)
    >>> kernel(np.zeros((2, 2))).shape
    (2, 2)
    """
    array = _as_matrix(matrix)
    tol = tol or DEFAULT_TOLERANCE
    columns = array.shape[1]
    if array.shape[0] == 0:
        return np.eye(columns, dtype=np.complex128)
    _, s, vh = _svd(array)
    rank = _rank_from_singular_values(s, tol)
    return np.ascontiguousarray(vh[rank:].conj().T)


def cokernel(matrix: DenseTensor | ArrayT | Any, tol: ToleranceContext | None = None) -> ArrayT:
    """Basis of linear functionals (rows) vanishing on the image of ``matrix``."""
    return kernel(_as_matrix(matrix).T, tol).T


def intersect(
    span_a: DenseTensor | ArrayT | Any,
    span_b: DenseTensor | ArrayT | Any,
    tol: ToleranceContext | None = None,
) -> ArrayT:
    """
    Orthonormal basis of the intersection of two column spans.
    """
    a = span_basis(span_a, tol)
    b = span_basis(span_b, tol)
    if a.shape[1] == 0 or b.shape[1] == 0:
        return np.zeros((a.shape[0], 0), dtype=np.complex128)
    coefficients = kernel(np.hstack([a, -b]), tol)
    return span_basis(a @ coefficients[: a.shape[1]], tol)


def contains(span: ArrayT, vector: ArrayT, tol: ToleranceContext | None = None) -> bool:
    """Whether ``vector`` lies in the column span of the orthonormal basis ``span``."""
    tol = tol or DEFAULT_TOLERANCE
    vector = np.asarray(vector, dtype=np.complex128).ravel()
    scale = float(np.linalg.norm(vector))
    if span.shape[1] == 0:
        return tol.vanishes(scale)
    residual = vector - span @ (span.conj().T @ vector)
    return tol.vanishes(float(np.linalg.norm(residual)), scale)


def image_rank(
    linear_map: Any,
    domain: ArrayT,
    tol: ToleranceContext | None = None,
) -> int:
    """
    Rank of ``linear_map`` restricted to the column span ``domain``.

    ``linear_map`` takes an array whose trailing axis runs over ``domain``
    columns and returns any array of outputs with the same trailing axis.
    """
    return numerical_rank(restricted_matrix(linear_map, domain), tol)


def restricted_matrix(linear_map: Any, domain: ArrayT) -> ArrayT:
    """Matrix of ``linear_map`` on the columns of ``domain`` (outputs flattened)."""
    images = [np.asarray(linear_map(domain[:, k]), dtype=np.complex128).ravel() for k in range(domain.shape[1])]
    if not images:
        return np.zeros((0, 0), dtype=np.complex128)
    return np.stack(images, axis=1)


def stack_columns(vectors: Iterable[Any]) -> ArrayT:
    columns = [np.asarray(vector, dtype=np.complex128).ravel() for vector in vectors]
    return np.stack(columns, axis=1)
