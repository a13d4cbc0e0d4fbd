from __future__ import annotations

from fractions import Fraction
from logging import Logger, getLogger
from typing import Any

import numpy as np

from spinorlab.classification import classify, module_dims, rank_table, total_dim
from spinorlab.clifford import CliffordModel, build_model, clifford_residual, gamma_identity_residuals, hodge_star
from spinorlab.curvature import CurvatureBundle, integrability_residuals
from spinorlab.definitions import ArrayT, Chirality, Dictionary, Space, WorkbenchCache
from spinorlab.diagrams import ARROW_TRIALS, certify_arrows
from spinorlab.geometry import conformal_transform, curvature_at, framed_curvature, null_frame, parallel_spinors
from spinorlab.lowdim import SixSpinorModel, TwoSpinorModel, petrov_at, petrov_type, six_cross_check, six_torsion_check
from spinorlab.polynomial import PolynomialMetric, parse_polynomial_metric
from spinorlab.pure import DualPair, PureSpinor, is_pure, make_dual_pair, spinor_filtration_level
from spinorlab.representatives import random_component, representative
from spinorlab.tolerance import ToleranceContext
from spinorlab.torsion import (
    classify_torsion,
    construct_twistor_connection,
    lee_form,
    recurrent_rescaling,
    torsion_parts,
)

logger: Logger = getLogger(__name__)

SpinorInputT = PureSpinor | ArrayT | list[complex] | None


class WorkbenchBase:
    """
    Settings, the Clifford model and the random generator shared by every mix-in.

    The model is built on first use and cached.
    """

    def __init__(
        self,
        m: int = 2,
        *,
        EPS_ABS: float | None = None,
        EPS_REL: float | None = None,
        SVD_RANK_CUTOFF: float | None = None,
        SEED: int | None = None,
        RAISE_ON_AMBIGUOUS_RANK: bool | None = None,
        DISABLE_LOGGING_DEBUG_OUTPUT: bool = False,
    ):
        self.m = int(m)
        self._model: CliffordModel | None = None
        self._clifford: Clifford | None = None
        self._curvature: Curvature | None = None
        self._torsion: Torsion | None = None
        self._geometry: Geometry | None = None
        self._initialize_settings(
            EPS_ABS=EPS_ABS,
            EPS_REL=EPS_REL,
            SVD_RANK_CUTOFF=SVD_RANK_CUTOFF,
            SEED=SEED,
            RAISE_ON_AMBIGUOUS_RANK=RAISE_ON_AMBIGUOUS_RANK,
            DISABLE_LOGGING_DEBUG_OUTPUT=DISABLE_LOGGING_DEBUG_OUTPUT,
        )

    def _initialize_settings(
        self,
        EPS_ABS: float | None = None,
        EPS_REL: float | None = None,
        SVD_RANK_CUTOFF: float | None = None,
        SEED: int | None = None,
        RAISE_ON_AMBIGUOUS_RANK: bool | None = None,
        DISABLE_LOGGING_DEBUG_OUTPUT: bool = False,
    ) -> None:
        """Initialize tolerances, seeding and logging."""

        # environment variables are consulted by the tolerance context
        self._tol = ToleranceContext.from_settings(
            EPS_ABS=EPS_ABS,
            EPS_REL=EPS_REL,
            SVD_RANK_CUTOFF=SVD_RANK_CUTOFF,
            RAISE_ON_AMBIGUOUS_RANK=RAISE_ON_AMBIGUOUS_RANK,
        )
        self._SEED = SEED
        self._rng = np.random.default_rng(SEED)
        if bool(DISABLE_LOGGING_DEBUG_OUTPUT):
            for logger_ in ["spinorlab"]:
                if getLogger(logger_).level < 20:
                    getLogger(logger_).setLevel("INFO")

    def __repr__(self) -> str:
        return f"{type(self).__name__}(m={self.m}, tol={self._tol!r})"

    @property
    def tol(self) -> ToleranceContext:
        return self._tol

    @property
    def seed(self) -> int | None:
        return self._SEED

    @property
    def rng(self) -> np.random.Generator:
        return self._rng

    @property
    def model(self) -> CliffordModel:
        """Clifford model for ``m`` under this workbench's tolerances."""
        if self._model is None:
            logger.debug("Building Clifford model for m=%d", self.m)
            self._model = build_model(self.m, self._tol)
        return self._model

    def spinor(self, components: SpinorInputT = None, chirality: Chirality | int = Chirality.PLUS) -> PureSpinor:
        """
        Pure spinor from components; the canonical spinor when none are given.

        :raises NotPure: the components are not a pure spinor
        """
        if isinstance(components, PureSpinor):
            return components
        if components is None:
            return PureSpinor.canonical(self.model)
        return PureSpinor(self.model, components, chirality)

    def dual_pair(self, xi: SpinorInputT = None) -> DualPair:
        return make_dual_pair(self.model, self.spinor(xi).components, seed=self._SEED)


class CliffordAPIMixIn(WorkbenchBase):
    """
    Clifford model, purity and spinor filtrations.

    :Usage:
        >>> from spinorlab import Workbench
        >>> wb = Workbench(m=3)
        >>> wb.clifford_is_pure([0, 0, 0, 1]).pure
        True
    """

    @property
    def clifford(self) -> Clifford:
        """
        Allows for transparent interaction with the Clifford methods.

        See Clifford class for usage.
        """
        if self._clifford is None:
            self._clifford = Clifford(workbench=self)
        return self._clifford

    def clifford_is_pure(self, chi: Any, chirality: Chirality | int = Chirality.PLUS) -> Dictionary:
        """
        Purity report of a chiral spinor.

        :raises ZeroSpinor: ``chi`` vanishes
        """
        return is_pure(self.model, chi, chirality)

    def clifford_filtration_level(self, chi: Any, xi: SpinorInputT = None, chirality: Chirality | int | None = None) -> Dictionary:
        """Position of ``chi`` in the filtration of the spinor module defined by ``xi``."""
        return spinor_filtration_level(self.model, chi, self.spinor(xi), chirality)

    def clifford_residuals(self, p: int = 1) -> Dictionary:
        """Clifford relations and the gamma sandwich identity for ``p``-forms."""
        sandwich, trace = gamma_identity_residuals(self.model, p, self._SEED)
        return Dictionary(relations=clifford_residual(self.model), sandwich=sandwich, trace=trace)

    def clifford_hodge_star(self, form: Any) -> ArrayT:
        return hodge_star(self.model, form)


class Clifford(WorkbenchCache[CliffordAPIMixIn]):
    """
    Allows interaction with the Clifford methods.

    :Usage:
        >>> from spinorlab import Workbench
        >>> wb = Workbench(m=2)
        >>> wb.clifford.is_pure([1, 0]).pure
        True
    """

    def is_pure(self, chi: Any, chirality: Chirality | int = Chirality.PLUS) -> Dictionary:
        """Implements :meth:`~CliffordAPIMixIn.clifford_is_pure`."""
        return self._workbench.clifford_is_pure(chi, chirality)

    def filtration_level(self, chi: Any, xi: SpinorInputT = None, chirality: Chirality | int | None = None) -> Dictionary:
        """Implements :meth:`~CliffordAPIMixIn.clifford_filtration_level`."""
        return self._workbench.clifford_filtration_level(chi, xi, chirality)

    def residuals(self, p: int = 1) -> Dictionary:
        """Implements :meth:`~CliffordAPIMixIn.clifford_residuals`."""
        return self._workbench.clifford_residuals(p)

    def hodge_star(self, form: Any) -> ArrayT:
        """Implements :meth:`~CliffordAPIMixIn.clifford_hodge_star`."""
        return self._workbench.clifford_hodge_star(form)


class CurvatureAPIMixIn(CliffordAPIMixIn):
    """
    Classification of curvature and Lie algebra elements relative to a pure spinor.

    :Usage:
        >>> from spinorlab import Workbench
        >>> wb = Workbench(m=3, SEED=1)
        >>> wb.curvature_total_dim("weyl")
        84
    """

    @property
    def curvature(self) -> Curvature:
        """
        Allows for transparent interaction with the curvature methods.

        See Curvature class for usage.
        """
        if self._curvature is None:
            self._curvature = Curvature(workbench=self)
        return self._curvature

    def curvature_classify(self, space: Space | str, tensor: Any, xi: SpinorInputT = None) -> Dictionary:
        """
        Filtration level and diagram position of ``tensor``.

        :raises SymmetryViolation: ``tensor`` lacks the symmetries of ``space``
        """
        return classify(space, tensor, self.spinor(xi))

    def curvature_module_dims(self, space: Space | str) -> dict[tuple[Fraction, int], int]:
        return module_dims(space, self.m)

    def curvature_total_dim(self, space: Space | str) -> int:
        return total_dim(space, self.m)

    def curvature_rank_table(self, space: Space | str, xi: SpinorInputT = None) -> Dictionary:
        """Measured dimensions of the graded pieces of ``space``."""
        return rank_table(space, self.dual_pair(xi), self._SEED)

    def curvature_arrows(self, space: Space | str, xi: SpinorInputT = None, trials: int = ARROW_TRIALS) -> Dictionary:
        return certify_arrows(space, self.dual_pair(xi), trials, self._SEED)

    def curvature_representative(self, space: Space | str, i: Fraction | int | str, j: int, xi: SpinorInputT = None, component: Any = None) -> ArrayT:
        """Element of ``space`` in the piece ``(i, j)``; a random component when none is given."""
        if component is None:
            component = random_component(space, self.m, i, j, self._rng)
        return representative(space, i, j, self.dual_pair(xi), component)

    def curvature_integrability(self, bundle: CurvatureBundle, xi: SpinorInputT = None, zeta: Any = None) -> Dictionary:
        return integrability_residuals(self.spinor(xi), bundle, zeta)

    def curvature_petrov_type(self, psi: Any, xi: SpinorInputT = None) -> Dictionary:
        """Petrov type of ``Psi_{A'B'C'D'}``; needs ``m = 2``."""
        return petrov_type(psi, None if xi is None else self.spinor(xi).components, TwoSpinorModel(self.model))

    def curvature_weyl_spinors(self, weyl: Any) -> tuple[ArrayT, ArrayT]:
        """Both Weyl spinors of a Weyl tensor; needs ``m = 2``."""
        return TwoSpinorModel(self.model).weyl_to_spinor(weyl)

    def curvature_six_cross_check(self, space: Space | str, tensor: Any, xi: SpinorInputT = None) -> Dictionary:
        """Spinor-form verdict against the generic one; needs ``m = 3``."""
        return six_cross_check(space, tensor, self.spinor(xi), SixSpinorModel(self.model))


class Curvature(WorkbenchCache[CurvatureAPIMixIn]):
    """
    Allows interaction with the curvature methods.

    :Usage:
        >>> from spinorlab import Workbench
        >>> wb = Workbench(m=3)
        >>> wb.curvature.total_dim("cotton")
        64
    """

    def classify(self, space: Space | str, tensor: Any, xi: SpinorInputT = None) -> Dictionary:
        """Implements :meth:`~CurvatureAPIMixIn.curvature_classify`."""
        return self._workbench.curvature_classify(space, tensor, xi)

    def module_dims(self, space: Space | str) -> dict[tuple[Fraction, int], int]:
        """Implements :meth:`~CurvatureAPIMixIn.curvature_module_dims`."""
        return self._workbench.curvature_module_dims(space)

    def total_dim(self, space: Space | str) -> int:
        """Implements :meth:`~CurvatureAPIMixIn.curvature_total_dim`."""
        return self._workbench.curvature_total_dim(space)

    def rank_table(self, space: Space | str, xi: SpinorInputT = None) -> Dictionary:
        """Implements :meth:`~CurvatureAPIMixIn.curvature_rank_table`."""
        return self._workbench.curvature_rank_table(space, xi)

    def arrows(self, space: Space | str, xi: SpinorInputT = None, trials: int = ARROW_TRIALS) -> Dictionary:
        """Implements :meth:`~CurvatureAPIMixIn.curvature_arrows`."""
        return self._workbench.curvature_arrows(space, xi, trials)

    def representative(self, space: Space | str, i: Fraction | int | str, j: int, xi: SpinorInputT = None, component: Any = None) -> ArrayT:
        """Implements :meth:`~CurvatureAPIMixIn.curvature_representative`."""
        return self._workbench.curvature_representative(space, i, j, xi, component)

    def integrability(self, bundle: CurvatureBundle, xi: SpinorInputT = None, zeta: Any = None) -> Dictionary:
        """Implements :meth:`~CurvatureAPIMixIn.curvature_integrability`."""
        return self._workbench.curvature_integrability(bundle, xi, zeta)

    def petrov_type(self, psi: Any, xi: SpinorInputT = None) -> Dictionary:
        """Implements :meth:`~CurvatureAPIMixIn.curvature_petrov_type`."""
        return self._workbench.curvature_petrov_type(psi, xi)

    def weyl_spinors(self, weyl: Any) -> tuple[ArrayT, ArrayT]:
        """Implements :meth:`~CurvatureAPIMixIn.curvature_weyl_spinors`."""
        return self._workbench.curvature_weyl_spinors(weyl)

    def six_cross_check(self, space: Space | str, tensor: Any, xi: SpinorInputT = None) -> Dictionary:
        """Implements :meth:`~CurvatureAPIMixIn.curvature_six_cross_check`."""
        return self._workbench.curvature_six_cross_check(space, tensor, xi)


class TorsionAPIMixIn(CurvatureAPIMixIn):
    """
    Intrinsic torsion of a pure spinor from frame connection coefficients.

    :Usage:
        >>> import numpy as np
        >>> from spinorlab import Workbench
        >>> wb = Workbench(m=3)
        >>> wb.torsion_classify(np.zeros((6, 6, 6))).parallel
        True
    """

    @property
    def torsion(self) -> Torsion:
        """
        Allows for transparent interaction with the torsion methods.

        See Torsion class for usage.
        """
        if self._torsion is None:
            self._torsion = Torsion(workbench=self)
        return self._torsion

    def torsion_classify(self, connection: Any, xi: SpinorInputT = None) -> Dictionary:
        """
        Torsion conditions holding for ``xi``.

        :raises NotSkew: ``connection`` is not skew in its last two slots
        """
        report = classify_torsion(connection, self.spinor(xi))
        if self.m == 3:
            report.spinor_form = six_torsion_check(connection, self.spinor(xi), SixSpinorModel(self.model))
        return report

    def torsion_parts(self, connection: Any, xi: SpinorInputT = None) -> Dictionary:
        return torsion_parts(connection, self.dual_pair(xi))

    def torsion_lee_form(self, connection: Any, xi: SpinorInputT = None) -> Dictionary:
        return lee_form(connection, self.spinor(xi))

    def torsion_recurrent_rescaling(self, connection: Any, xi: SpinorInputT = None) -> Dictionary:
        return recurrent_rescaling(connection, self.spinor(xi))

    def torsion_twistor_connection(self, zeta: Any, xi: SpinorInputT = None) -> Dictionary:
        """Connection coefficients solving the twistor equation for ``(xi, zeta)``."""
        return construct_twistor_connection(self.spinor(xi), zeta, self._SEED)


class Torsion(WorkbenchCache[TorsionAPIMixIn]):
    """
    Allows interaction with the torsion methods.

    :Usage:
        >>> import numpy as np
        >>> from spinorlab import Workbench
        >>> wb = Workbench(m=4)
        >>> wb.torsion.classify(np.zeros((8, 8, 8))).foliating
        True
    """

    def classify(self, connection: Any, xi: SpinorInputT = None) -> Dictionary:
        """Implements :meth:`~TorsionAPIMixIn.torsion_classify`."""
        return self._workbench.torsion_classify(connection, xi)

    def parts(self, connection: Any, xi: SpinorInputT = None) -> Dictionary:
        """Implements :meth:`~TorsionAPIMixIn.torsion_parts`."""
        return self._workbench.torsion_parts(connection, xi)

    def lee_form(self, connection: Any, xi: SpinorInputT = None) -> Dictionary:
        """Implements :meth:`~TorsionAPIMixIn.torsion_lee_form`."""
        return self._workbench.torsion_lee_form(connection, xi)

    def recurrent_rescaling(self, connection: Any, xi: SpinorInputT = None) -> Dictionary:
        """Implements :meth:`~TorsionAPIMixIn.torsion_recurrent_rescaling`."""
        return self._workbench.torsion_recurrent_rescaling(connection, xi)

    def twistor_connection(self, zeta: Any, xi: SpinorInputT = None) -> Dictionary:
        """Implements :meth:`~TorsionAPIMixIn.torsion_twistor_connection`."""
        return self._workbench.torsion_twistor_connection(zeta, xi)


class GeometryAPIMixIn(TorsionAPIMixIn):
    """
    Curvature of polynomial metrics at a point.

    :Usage:
        >>> from spinorlab import Workbench
        >>> wb = Workbench(m=2)
        >>> metric = wb.geometry_parse_metric("g[0][2] = 1/2\\ng[1][3] = 1/2")
        >>> float(abs(wb.geometry_curvature(metric, [0, 0, 0, 0]).weyl).max())
        0.0
    """

    @property
    def geometry(self) -> Geometry:
        """
        Allows for transparent interaction with the geometry methods.

        See Geometry class for usage.
        """
        if self._geometry is None:
            self._geometry = Geometry(workbench=self)
        return self._geometry

    def geometry_parse_metric(self, text: str) -> PolynomialMetric:
        """
        :raises ParseError: malformed text, with line and column
        """
        return parse_polynomial_metric(text, self.m)

    def geometry_curvature(self, metric: PolynomialMetric, point: Any) -> Dictionary:
        return curvature_at(metric, point, self._tol)

    def geometry_framed_curvature(self, metric: PolynomialMetric, point: Any) -> Dictionary:
        return framed_curvature(metric, point, model=self.model)

    def geometry_null_frame(self, g: Any) -> ArrayT:
        return null_frame(g, self.model)

    def geometry_parallel_spinors(self, metric: PolynomialMetric, point: Any, chirality: Chirality | int = Chirality.PLUS) -> ArrayT:
        """Spinors annihilated by the frame connection at ``point``."""
        return parallel_spinors(framed_curvature(metric, point, model=self.model).connection, self.model, chirality)

    def geometry_conformal_transform(self, metric: PolynomialMetric, omega: Any, point: Any) -> Dictionary:
        return conformal_transform(metric, omega, point, self._tol)

    def geometry_petrov(self, metric: PolynomialMetric, point: Any, xi: SpinorInputT = None) -> Dictionary:
        """Petrov types at ``point``; needs ``m = 2``."""
        return petrov_at(metric, point, None if xi is None else self.spinor(xi).components)


class Geometry(WorkbenchCache[GeometryAPIMixIn]):
    """
    Allows interaction with the geometry methods.

    :Usage:
        >>> from spinorlab import Workbench
        >>> wb = Workbench(m=2)
        >>> wb.geometry.parse_metric("g[0][2] = 1/2\\ng[1][3] = 1/2").n
        4
    """

    def parse_metric(self, text: str) -> PolynomialMetric:
        """Implements :meth:`~GeometryAPIMixIn.geometry_parse_metric`."""
        return self._workbench.geometry_parse_metric(text)

    def curvature(self, metric: PolynomialMetric, point: Any) -> Dictionary:
        """Implements :meth:`~GeometryAPIMixIn.geometry_curvature`."""
        return self._workbench.geometry_curvature(metric, point)

    def framed_curvature(self, metric: PolynomialMetric, point: Any) -> Dictionary:
        """Implements :meth:`~GeometryAPIMixIn.geometry_framed_curvature`."""
        return self._workbench.geometry_framed_curvature(metric, point)

    def null_frame(self, g: Any) -> ArrayT:
        """Implements :meth:`~GeometryAPIMixIn.geometry_null_frame`."""
        return self._workbench.geometry_null_frame(g)

    def parallel_spinors(self, metric: PolynomialMetric, point: Any, chirality: Chirality | int = Chirality.PLUS) -> ArrayT:
        """Implements :meth:`~GeometryAPIMixIn.geometry_parallel_spinors`."""
        return self._workbench.geometry_parallel_spinors(metric, point, chirality)

    def conformal_transform(self, metric: PolynomialMetric, omega: Any, point: Any) -> Dictionary:
        """Implements :meth:`~GeometryAPIMixIn.geometry_conformal_transform`."""
        return self._workbench.geometry_conformal_transform(metric, omega, point)

    def petrov(self, metric: PolynomialMetric, point: Any, xi: SpinorInputT = None) -> Dictionary:
        """Implements :meth:`~GeometryAPIMixIn.geometry_petrov`."""
        return self._workbench.geometry_petrov(metric, point, xi)


class Workbench(GeometryAPIMixIn):
    """
    Single entry point to spinorlab for one half-dimension ``m``.

    Every operation is bound to the workbench's Clifford model and tolerances.

    :Usage:
        >>> from spinorlab import Workbench
        >>> wb = Workbench(m=3, EPS_ABS=1e-10, SEED=7)
        >>> weyl = wb.curvature_representative("weyl", 2, 0)
        >>> wb.curvature_classify("weyl", weyl).level_name
        '2'

    :param m: half the dimension, from 2 to 6
    :param EPS_ABS: absolute floor for vanishing decisions
    :param EPS_REL: relative threshold for vanishing decisions
    :param SVD_RANK_CUTOFF: relative singular value cutoff for ranks
    :param SEED: seed for every random choice the workbench makes
    :param RAISE_ON_AMBIGUOUS_RANK: raise
        :class:`~spinorlab.exceptions.ToleranceAmbiguous` when a singular value
        sits close to the rank cutoff; defaults ``True``
    :param DISABLE_LOGGING_DEBUG_OUTPUT: Turn off debug output from logging for
        this package.
    """
