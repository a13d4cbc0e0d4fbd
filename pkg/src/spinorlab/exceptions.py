from __future__ import annotations


class SpinorLabError(Exception):
    """Base error for all exceptions from spinorlab."""


class ValidationError(ValueError, SpinorLabError):
    """Base class for input that does not have the required shape or symmetry."""


class RoleMismatch(ValidationError):
    """Index roles do not form a dual pair or do not agree."""


class ExtentMismatch(ValidationError):
    """Index extents do not agree."""


class NotSkew(ValidationError):
    """Tensor is not skew-symmetric in the required indices."""


class SymmetryViolation(ValidationError):
    """Tensor does not satisfy the defining symmetries of its space."""


class BadComponentSymmetry(ValidationError):
    """Component spinor lacks the (anti)symmetry or trace property its module needs."""


class AsymmetricEntry(ValidationError):
    """Metric entries g[a][b] and g[b][a] were given with different values."""


class ZeroSpinor(ValidationError):
    """Spinor is zero to within tolerance."""


class InvalidTolerance(ValidationError):
    """Tolerance settings must be strictly positive numbers."""


class SchemaError(ValidationError):
    """JSON document does not match the spinorlab envelope schema."""


class UnknownFixture(ValidationError):
    """No bundled fixture exists with the requested name."""


class ParseError(ValidationError):
    """Polynomial metric text could not be parsed."""

    def __init__(self, message: str, line: int = 0, column: int = 0):
        self.line = line
        self.column = column
        super().__init__(f"{message} (line {line}, column {column})")


class NotPure(ValidationError):
    """Spinor is not pure."""


class UnsupportedDimension(ValidationError):
    """Requested half-dimension m is outside the supported range."""


class UndefinedComponent(SpinorLabError):
    """Projection map does not exist for this dimension."""


class NumericalError(ArithmeticError, SpinorLabError):
    """Base class for failures of numerical decisions."""


class ToleranceAmbiguous(NumericalError):
    """A singular value lies too close to the rank cutoff; tighten tolerances."""


class InconsistentVerdict(NumericalError):
    """Two independent tests disagreed; indicates a convention bug."""


class DegenerateDual(NumericalError):
    """Random dual spinor candidate pairs to zero with the pure spinor."""


class DegenerateMetric(NumericalError):
    """Metric is degenerate at the evaluation point."""


class ZeroConformalFactor(NumericalError):
    """Conformal factor vanishes at the evaluation point."""


class FileError(IOError, SpinorLabError):
    """Base class for all exceptions for file handling."""


class InputFileNotFoundError(FileError):
    """Specified input file does not appear to exist."""


class InputFilePermissionError(FileError):
    """Permission was denied to read the specified input file."""
