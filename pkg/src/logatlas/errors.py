"""Exception taxonomy. The CLI maps these onto exit codes via ``slug``."""


class LogAtlasError(Exception):
    """Base class for every error raised by this package."""

    slug = "error"


class InvalidInputError(LogAtlasError):
    """Malformed arguments: wrong shapes, non-finite entries, bad ranges."""

    slug = "invalid-input"


class MathDomainError(LogAtlasError):
    """Input outside the mathematical domain of the operation (exit 3)."""

    slug = "math-domain"


class SingularMatrixError(MathDomainError):
    slug = "singular-matrix"


class NotSemisimpleError(MathDomainError):
    slug = "not-semisimple"


class NoRealLogarithmError(MathDomainError):
    slug = "no-real-logarithm"


class NotSpecialOrthogonalError(MathDomainError):
    slug = "not-special-orthogonal"


class InvalidBranchError(MathDomainError):
    slug = "invalid-branch"


class NumericRangeError(MathDomainError):
    slug = "numeric-range"


class IllConditionedError(LogAtlasError):
    """Numerically ambiguous input: refused rather than guessed (exit 4)."""

    slug = "ill-conditioned"


class DegenerateSampleError(IllConditionedError):
    slug = "degenerate-sample"
