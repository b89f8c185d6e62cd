"""Exception types shared across the package."""


class TritspError(Exception):
    """Base class for all package errors."""


class InstanceFormatError(TritspError, ValueError):
    """A cost matrix or instance file is malformed."""


class ParseError(InstanceFormatError):
    """Unparseable instance file. Carries a line number when known."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class AsymmetricCostError(InstanceFormatError):
    """cost[u][v] != cost[v][u] somewhere."""


class NegativeCostError(InstanceFormatError):
    """A cost entry is negative (or the diagonal is nonzero)."""


class DimensionMismatchError(InstanceFormatError):
    """Matrix shape disagrees with the declared vertex count."""


class GenerationRetryError(TritspError):
    """An instance generator exhausted its retry budget."""


class SizeRefusalError(TritspError):
    """Input exceeds a hard size bound (exact oracle cap, bad-vertex cap)."""


class ContractViolationError(TritspError):
    """An internal precondition failed (parity, connectivity, bad call)."""
