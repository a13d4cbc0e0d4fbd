from __future__ import annotations

from logging import Logger, getLogger
from os import environ
from typing import Any

from spinorlab.exceptions import InvalidTolerance

logger: Logger = getLogger(__name__)

#: Default absolute tolerance for vanishing decisions.
DEFAULT_EPS_ABS = 1e-10
#: Default relative tolerance for vanishing decisions.
DEFAULT_EPS_REL = 1e-9
#: Default rank cutoff relative to the largest singular value.
DEFAULT_SVD_RANK_CUTOFF = 1e-8
#: Singular values within this factor of the cutoff make a rank ambiguous.
AMBIGUITY_FACTOR = 10.0


def _env_setting(name: str) -> str | None:
    value = environ.get(f"SPINORLAB_{name}", environ.get(f"PYTHON_SPINORLAB_{name}"))
    if value is not None:
        logger.debug("Using %s from SPINORLAB_%s env variable", value, name)
    return value


class ToleranceContext:
    """
    Numerical thresholds shared by every decision spinorlab makes.

    A value *vanishes* when its norm is at most ``max(eps_abs, eps_rel * scale)``
    where ``scale`` is the norm of the input it was computed from. Ranks count
    singular values above ``svd_rank_cutoff`` times the largest singular value.

    :param eps_abs: absolute floor for vanishing decisions
    :param eps_rel: relative threshold for vanishing decisions
    :param svd_rank_cutoff: relative singular value cutoff for ranks
    :param raise_on_ambiguous_rank: raise :class:`~spinorlab.exceptions.ToleranceAmbiguous`
        when a singular value sits within a factor 10 of the cutoff
    """

    __slots__ = ("eps_abs", "eps_rel", "svd_rank_cutoff", "raise_on_ambiguous_rank")

    def __init__(
        self,
        eps_abs: float = DEFAULT_EPS_ABS,
        eps_rel: float = DEFAULT_EPS_REL,
        svd_rank_cutoff: float = DEFAULT_SVD_RANK_CUTOFF,
        raise_on_ambiguous_rank: bool = True,
    ):
        values = {}
        for name, value in (
            ("eps_abs", eps_abs),
            ("eps_rel", eps_rel),
            ("svd_rank_cutoff", svd_rank_cutoff),
        ):
            try:
                value = float(value)
            except (TypeError, ValueError) as exc:
                raise InvalidTolerance(f"{name} must be a number; got {value!r}") from exc
            if not value > 0:
                raise InvalidTolerance(f"{name} must be strictly positive; got {value}")
            values[name] = value
        object.__setattr__(self, "eps_abs", values["eps_abs"])
        object.__setattr__(self, "eps_rel", values["eps_rel"])
        object.__setattr__(self, "svd_rank_cutoff", values["svd_rank_cutoff"])
        object.__setattr__(self, "raise_on_ambiguous_rank", bool(raise_on_ambiguous_rank))

    def __setattr__(self, key: str, value: Any) -> None:
        raise AttributeError(f"{type(self).__name__} is immutable")

    @classmethod
    def from_settings(
        cls,
        EPS_ABS: float | str | None = None,
        EPS_REL: float | str | None = None,
        SVD_RANK_CUTOFF: float | str | None = None,
        RAISE_ON_AMBIGUOUS_RANK: bool | None = None,
    ) -> ToleranceContext:
        """
        Build a context from explicit settings, falling back to environment
        variables ``SPINORLAB_EPS_ABS``, ``SPINORLAB_EPS_REL`` and
        ``SPINORLAB_SVD_RANK_CUTOFF`` and then to the defaults.
        """
        eps_abs = EPS_ABS if EPS_ABS is not None else _env_setting("EPS_ABS")
        eps_rel = EPS_REL if EPS_REL is not None else _env_setting("EPS_REL")
        cutoff = SVD_RANK_CUTOFF if SVD_RANK_CUTOFF is not None else _env_setting("SVD_RANK_CUTOFF")
        return cls(
            eps_abs=DEFAULT_EPS_ABS if eps_abs is None else eps_abs,  # type: ignore[arg-type]
            eps_rel=DEFAULT_EPS_REL if eps_rel is None else eps_rel,  # type: ignore[arg-type]
            svd_rank_cutoff=DEFAULT_SVD_RANK_CUTOFF if cutoff is None else cutoff,  # type: ignore[arg-type]
            raise_on_ambiguous_rank=True if RAISE_ON_AMBIGUOUS_RANK is None else RAISE_ON_AMBIGUOUS_RANK,
        )

    def replace(self, **changes: Any) -> ToleranceContext:
        """Return a copy with some fields changed."""
        fields = {name: getattr(self, name) for name in self.__slots__}
        fields.update(changes)
        return type(self)(**fields)

    def threshold(self, scale: float = 0.0) -> float:
        """Largest norm still considered zero for an input of norm ``scale``."""
        return max(self.eps_abs, self.eps_rel * float(scale))

    def vanishes(self, norm: float, scale: float = 0.0) -> bool:
        return float(norm) <= self.threshold(scale)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ToleranceContext):
            return NotImplemented
        return all(getattr(self, name) == getattr(other, name) for name in self.__slots__)

    def __hash__(self) -> int:
        return hash(tuple(getattr(self, name) for name in self.__slots__))

    def __repr__(self) -> str:
        return (
            f"ToleranceContext(eps_abs={self.eps_abs!r}, eps_rel={self.eps_rel!r}, "
            f"svd_rank_cutoff={self.svd_rank_cutoff!r})"
        )


#: Context used when callers do not pass one.
DEFAULT_TOLERANCE = ToleranceContext()
