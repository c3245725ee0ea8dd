"""Shared exception and warning types."""


class OsgError(Exception):
    """Base class for package-specific errors."""


class GridError(OsgError, ValueError):
    """A grid is malformed or incompatible with the requested operation."""


class TruncationError(GridError):
    """Too much probability lies outside the grid for the result to be trusted."""


class ToleranceError(OsgError, RuntimeError):
    """A numerical validation check (e.g. step halving) exceeded its tolerance."""


class ConfigError(OsgError, ValueError):
    """Invalid run configuration; carries the offending key and line number."""

    def __init__(self, message: str, key: str | None = None, line: int | None = None):
        loc = []
        if key is not None:
            loc.append(f"key '{key}'")
        if line is not None:
            loc.append(f"line {line}")
        suffix = f" ({', '.join(loc)})" if loc else ""
        super().__init__(message + suffix)
        self.key = key
        self.line = line


class CouplingRegimeWarning(UserWarning):
    """The strong-coupling condition behind an analytic formula is not met."""
