"""Exception hierarchy shared by every module."""


class ChiralkitError(Exception):
    """Base class; ``code`` is the machine-readable tag used by the CLI."""

    code = "error"


class ValidationError(ChiralkitError, ValueError):
    code = "validation_error"


class DimensionMismatch(ValidationError):
    code = "dimension_mismatch"


class NullSupportingVector(ValidationError):
    code = "null_supporting_vector"


class NotOrthogonal(ValidationError):
    code = "not_orthogonal"


class SpaceMismatch(ValidationError):
    code = "space_mismatch"


class NotClosed(ValidationError):
    code = "not_closed"


class EmptyFamily(ValidationError):
    code = "empty_family"


class TooLarge(ValidationError):
    code = "too_large"


class NumericalBreakdown(ChiralkitError, ArithmeticError):
    code = "numerical_breakdown"

    def __init__(self, message, tolerance=None):
        super().__init__(message)
        self.tolerance = tolerance


class InternalInconsistency(ChiralkitError, RuntimeError):
    code = "internal_inconsistency"


class UnclassifiableElement(ChiralkitError):
    code = "unclassifiable_element"


class WitnessUnavailable(ChiralkitError):
    code = "witness_unavailable"
