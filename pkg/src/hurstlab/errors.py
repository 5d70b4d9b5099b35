"""Exception hierarchy shared by all hurstlab modules.

Every domain error carries a short machine-readable ``code`` so the CLI and
the HTTP service can surface failures uniformly.
"""


class HurstLabError(Exception):
    """Base class for all domain errors."""

    code = "error"


class InvalidArgumentError(HurstLabError, ValueError):
    """A parameter violates its documented domain (e.g. H outside (0, 1))."""

    code = "invalid_argument"


class DegenerateInputError(HurstLabError, ValueError):
    """Input data is degenerate for the requested operation (e.g. zero variance)."""

    code = "degenerate_input"


class InsufficientDataError(HurstLabError, ValueError):
    """Not enough data points survive to compute the requested quantity."""

    code = "insufficient_data"


class EmbeddingError(HurstLabError, ArithmeticError):
    """Circulant embedding produced a genuinely negative eigenvalue."""

    code = "embedding_failure"


class TraceParseError(HurstLabError, ValueError):
    """A packet-trace line failed to parse.  ``line`` is 1-based."""

    code = "parse_error"

    def __init__(self, message, line=None):
        super().__init__(message)
        self.line = line


class TraceOrderingError(TraceParseError):
    """Timestamps in a packet trace decreased."""

    code = "ordering_error"
