from logging import NullHandler, getLogger

from spinorlab.classification import classify, module_dims, rank_table, total_dim
from spinorlab.clifford import CliffordModel, build_model, hodge_star
from spinorlab.curvature import CurvatureBundle, integrability_residuals
from spinorlab.definitions import Chirality, Dictionary, IndexRole, List, ListEntry, Space
from spinorlab.diagrams import certify_arrows, present_cells
from spinorlab.exceptions import (
    AsymmetricEntry,
    BadComponentSymmetry,
    DegenerateDual,
    DegenerateMetric,
    ExtentMismatch,
    FileError,
    InconsistentVerdict,
    InputFileNotFoundError,
    InputFilePermissionError,
    InvalidTolerance,
    NotPure,
    NotSkew,
    NumericalError,
    ParseError,
    RoleMismatch,
    SchemaError,
    SpinorLabError,
    SymmetryViolation,
    ToleranceAmbiguous,
    UndefinedComponent,
    UnknownFixture,
    UnsupportedDimension,
    ValidationError,
    ZeroConformalFactor,
    ZeroSpinor,
)
from spinorlab.geometry import conformal_transform, curvature_at, framed_curvature
from spinorlab.lowdim import SixSpinorModel, TwoSpinorModel, petrov_type
from spinorlab.polynomial import PolynomialMetric, parse_polynomial_metric
from spinorlab.pure import DualPair, PureSpinor, is_pure, make_dual_pair
from spinorlab.representatives import representative
from spinorlab.tensor import DenseTensor
from spinorlab.tolerance import ToleranceContext
from spinorlab.torsion import classify_torsion, construct_twistor_connection
from spinorlab.workbench import (
    Clifford,
    CliffordAPIMixIn,
    Curvature,
    CurvatureAPIMixIn,
    Geometry,
    GeometryAPIMixIn,
    Torsion,
    TorsionAPIMixIn,
    Workbench,
)

getLogger("spinorlab").addHandler(NullHandler())

__all__ = (
    "AsymmetricEntry",
    "BadComponentSymmetry",
    "Chirality",
    "Clifford",
    "CliffordAPIMixIn",
    "CliffordModel",
    "Curvature",
    "CurvatureAPIMixIn",
    "CurvatureBundle",
    "DegenerateDual",
    "DegenerateMetric",
    "DenseTensor",
    "Dictionary",
    "DualPair",
    "ExtentMismatch",
    "FileError",
    "Geometry",
    "GeometryAPIMixIn",
    "InconsistentVerdict",
    "IndexRole",
    "InputFileNotFoundError",
    "InputFilePermissionError",
    "InvalidTolerance",
    "List",
    "ListEntry",
    "NotPure",
    "NotSkew",
    "NumericalError",
    "ParseError",
    "PolynomialMetric",
    "PureSpinor",
    "RoleMismatch",
    "SchemaError",
    "SixSpinorModel",
    "Space",
    "SpinorLabError",
    "SymmetryViolation",
    "ToleranceAmbiguous",
    "ToleranceContext",
    "Torsion",
    "TorsionAPIMixIn",
    "TwoSpinorModel",
    "UndefinedComponent",
    "UnknownFixture",
    "UnsupportedDimension",
    "ValidationError",
    "Workbench",
    "ZeroConformalFactor",
    "ZeroSpinor",
    "build_model",
    "certify_arrows",
    "classify",
    "classify_torsion",
    "conformal_transform",
    "construct_twistor_connection",
    "curvature_at",
    "framed_curvature",
    "hodge_star",
    "integrability_residuals",
    "is_pure",
    "make_dual_pair",
    "module_dims",
    "parse_polynomial_metric",
    "petrov_type",
    "present_cells",
    "rank_table",
    "representative",
    "total_dim",
)
