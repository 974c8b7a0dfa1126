"""Exception types shared across the package."""


class KnotcertError(Exception):
    """Base class for all knotcert errors."""


class InputError(KnotcertError):
    """A caller violated a precondition or supplied malformed input."""


class TriangleAbsent(InputError):
    """A triangle-Y move named a 3-cycle that is not present."""


class LabelClash(InputError):
    """A fresh vertex label is already used in the graph."""


class DegreeNotThree(InputError):
    """A Y-triangle move named a center whose degree is not exactly 3."""


class EdgeAbsent(InputError):
    """An edge operation named a pair that is not an edge."""


class ScriptError(InputError):
    """A move script failed; carries the index of the first failing step."""

    def __init__(self, index: int, step, cause: Exception):
        self.index = index
        self.step = step
        self.cause = cause
        super().__init__(f"step {index} ({step}) failed: {cause}")


class DiagramParseError(InputError):
    """Diagram text is structurally invalid."""


class AttachmentError(DiagramParseError):
    """An arc id is not referenced exactly twice across all rotation lists."""


class BoundExceeded(InputError):
    """A state-sum was requested beyond the configured crossing bound."""
