from __future__ import annotations


class WorkbenchError(Exception):
    """Base class for errors raised by this package."""


class ResourceLimitError(WorkbenchError):
    """A configured cap (group order, subgroup count, morphism count) was exceeded."""


class SpecParseError(WorkbenchError, ValueError):
    """A group spec or generator file could not be parsed."""


class UnsupportedError(WorkbenchError):
    """The requested parameter lies outside the implemented range."""


class RealizabilityError(WorkbenchError, ArithmeticError):
    """A series formula produced a non-integral or negative coefficient."""
