from __future__ import annotations

from collections import UserList
from collections.abc import Iterable, Mapping, Sequence
from enum import Enum
from fractions import Fraction
from typing import Any, Generic, TypeVar, Union

import numpy as np
import numpy.typing as npt

V = TypeVar("V")

#: Type to define JSON.
JsonValueT = Union[
    None,
    int,
    float,
    str,
    bool,
    Sequence["JsonValueT"],
    Mapping[str, "JsonValueT"],
]
#: Dense complex array.
ArrayT = npt.NDArray[np.complex128]
#: Filtration level; integers for 𝔤, ℭ and 𝔉, half-integers for 𝔄 and 𝔚.
LevelT = Fraction
#: Type for entry in List.
ListEntryT = TypeVar("ListEntryT", bound="ListEntry")
#: Type for the workbench behind a namespace.
WorkbenchT = TypeVar("WorkbenchT")


class IndexRole(str, Enum):
    """Role of one index of a :class:`~spinorlab.tensor.DenseTensor`."""

    VECTOR_UP = "vector-up"
    VECTOR_DOWN = "vector-down"
    SPINOR_PLUS = "spinor+"
    SPINOR_MINUS = "spinor-"
    DUAL_PLUS = "dual-spinor+"
    DUAL_MINUS = "dual-spinor-"
    SCALAR = "scalar"

    @property
    def dual(self) -> IndexRole:
        """Role that contracts with this one."""
        return {
            IndexRole.VECTOR_UP: IndexRole.VECTOR_DOWN,
            IndexRole.VECTOR_DOWN: IndexRole.VECTOR_UP,
            IndexRole.SPINOR_PLUS: IndexRole.DUAL_PLUS,
            IndexRole.DUAL_PLUS: IndexRole.SPINOR_PLUS,
            IndexRole.SPINOR_MINUS: IndexRole.DUAL_MINUS,
            IndexRole.DUAL_MINUS: IndexRole.SPINOR_MINUS,
            IndexRole.SCALAR: IndexRole.SCALAR,
        }[self]

    @property
    def is_vector(self) -> bool:
        return self in {IndexRole.VECTOR_UP, IndexRole.VECTOR_DOWN}


class Space(str, Enum):
    """
    Modules that can be classified relative to a projective pure spinor.

    ``ricci``, ``cotton`` and ``weyl`` are the curvature spaces, ``lie`` is
    𝔰𝔬(2m) itself and ``torsion`` is the intrinsic torsion module.
    """

    LIE = "lie"
    RICCI = "ricci"
    COTTON = "cotton"
    WEYL = "weyl"
    TORSION = "torsion"

    @property
    def symbol(self) -> str:
        return {
            Space.LIE: "𝔤",
            Space.RICCI: "𝔉",
            Space.COTTON: "𝔄",
            Space.WEYL: "ℭ",
            Space.TORSION: "𝔚",
        }[self]

    @property
    def tensor_rank(self) -> int:
        """Number of vector indices of elements of this space."""
        return {
            Space.LIE: 2,
            Space.RICCI: 2,
            Space.COTTON: 3,
            Space.WEYL: 4,
            Space.TORSION: 3,
        }[self]


class Chirality(int, Enum):
    """Chirality of a spinor."""

    PLUS = 1
    MINUS = -1

    @property
    def opposite(self) -> Chirality:
        return Chirality.MINUS if self is Chirality.PLUS else Chirality.PLUS

    @property
    def sign(self) -> str:
        return "+" if self is Chirality.PLUS else "-"


def level(value: int | str | Fraction) -> Fraction:
    """
    Normalize a filtration level.

    >>> level("-3/2")
    Fraction(-3, 2)
    >>> level(2)
    Fraction(2, 1)
    """
    return Fraction(value)


def format_level(value: Fraction | float) -> str:
    """
    Human form of a level, ``inf`` for the zero element.

    >>> format_level(Fraction(-1, 2))
    '-1/2'
    """
    if isinstance(value, float):
        return "inf" if value > 0 else "-inf"
    return str(value)


def cell_name(space: Space, i: Fraction, j: int) -> str:
    """
    Diagram position of an irreducible component.

    >>> cell_name(Space.WEYL, Fraction(2), 0)
    'ℭ_2^0'
    """
    return f"{space.symbol}_{format_level(i)}^{j}"


class Dictionary(dict):  # type: ignore[type-arg]
    """
    Dictionary with attribute access used for every report spinorlab returns.

    Nested mappings are converted on construction so reports can be read as
    ``report.residuals.weyl``.
    """

    def __init__(self, data: Mapping[str, Any] | None = None, **kwargs: Any):
        super().__init__()
        for key, value in {**(data or {}), **kwargs}.items():
            self[key] = self._normalize(value)

    @classmethod
    def _normalize(cls, value: Any) -> Any:
        if isinstance(value, Mapping) and not isinstance(value, Dictionary):
            return Dictionary(value)
        return value

    def __getattr__(self, item: str) -> Any:
        try:
            return self[item]
        except KeyError as exc:
            raise AttributeError(item) from exc

    def __setattr__(self, key: str, value: Any) -> None:
        self[key] = self._normalize(value)

    def to_json(self) -> JsonValueT:
        """Convert to plain JSON values; arrays become nested ``[re, im]`` lists."""
        return _to_json(self)


def _to_json(value: Any) -> JsonValueT:
    if isinstance(value, Mapping):
        return {str(key): _to_json(item) for key, item in value.items()}
    if isinstance(value, np.ndarray):
        if np.iscomplexobj(value):
            return np.stack([value.real, value.imag], axis=-1).tolist()  # type: ignore[no-any-return]
        return value.tolist()  # type: ignore[no-any-return]
    if isinstance(value, (list, tuple, UserList)):
        return [_to_json(item) for item in value]
    if isinstance(value, Fraction):
        return format_level(value)
    if isinstance(value, Enum):
        return value.value  # type: ignore[no-any-return]
    if isinstance(value, complex):
        return [value.real, value.imag]
    if isinstance(value, (np.bool_, bool)):
        return bool(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return float(value)
    if isinstance(value, float) and value == float("inf"):
        return "inf"
    return value  # type: ignore[no-any-return]


class List(UserList[ListEntryT]):
    """Base definition for list-like reports."""

    def __init__(
        self,
        list_entries: Iterable[Mapping[str, Any] | ListEntryT] | None = None,
        entry_class: type[ListEntryT] | None = None,
    ):
        super().__init__(
            [
                (
                    entry_class(entry)  # type: ignore[misc]
                    if entry_class is not None and isinstance(entry, Mapping) and not isinstance(entry, entry_class)
                    else entry
                )
                for entry in list_entries or []
            ]
        )

    def to_json(self) -> JsonValueT:
        return _to_json(list(self))


class ListEntry(Dictionary):
    """Base definition for objects within a :class:`List`."""


class WorkbenchCache(Generic[WorkbenchT]):
    """
    Caches the workbench.

    Subclass this for any namespace object that needs access to the Workbench.
    """

    def __init__(self, *args: Any, workbench: WorkbenchT, **kwargs: Any):
        self._workbench = workbench
        super().__init__(*args, **kwargs)
