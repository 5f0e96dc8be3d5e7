"""Exception types raised across the package."""


class GramSampleError(Exception):
    """Base class for all package errors."""


class InvalidMatrixError(GramSampleError, ValueError):
    """Input is not a finite, non-empty 2-D real array."""


class ZeroMatrixError(GramSampleError, ValueError):
    pass


class DimensionMismatchError(GramSampleError, ValueError):
    pass


class NoConvergenceError(GramSampleError, RuntimeError):
    pass


class BadBetaError(GramSampleError, ValueError):
    pass


class BadCountError(GramSampleError, ValueError):
    pass


class ZeroProbabilitySampledError(GramSampleError, ValueError):
    pass


class BadShapeError(GramSampleError, ValueError):
    pass


class ZeroLeverageError(GramSampleError, ValueError):
    pass


class NotRankOneError(GramSampleError, ValueError):
    pass


class ZeroColumnSelectedError(GramSampleError, ValueError):
    pass


class DomainError(GramSampleError, ValueError):
    """A scalar parameter lies outside the range a bound is stated for."""


class BadSpectrumError(GramSampleError, ValueError):
    pass


class ParseError(GramSampleError, ValueError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class UnsupportedFieldError(ParseError):
    pass


class RaggedRowsError(ParseError):
    pass


class ExperimentError(GramSampleError, RuntimeError):
    pass
