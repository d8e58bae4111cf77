"""Exception hierarchy shared by all layers."""

from typing import Optional


class NoMiddleError(Exception):
    """Base class for every error raised by the package."""


class BoundExceeded(NoMiddleError):
    """A configured enumeration bound would be exceeded."""

    def __init__(self, what: str, limit: int, needed: Optional[int] = None):
        self.what = what
        self.limit = limit
        self.needed = needed
        detail = f" (needs {needed})" if needed is not None else ""
        super().__init__(f"{what} exceeds bound {limit}{detail}")


class SpecSyntaxError(NoMiddleError):
    """The ring-spec text does not match the grammar."""

    def __init__(self, message: str, position: int, text: str = ""):
        self.position = position
        self.text = text
        super().__init__(f"{message} at column {position + 1}")


class SpecSemanticError(NoMiddleError):
    """The ring-spec parses but describes no valid ring."""


class RingConstructionError(SpecSemanticError):
    """Tables for a recipe could not be realised."""


class ModuleConstructionError(NoMiddleError):
    """Module data violates the module axioms or a closure requirement."""


class ConsistencyError(NoMiddleError):
    """Two independent computations that must agree disagree."""
