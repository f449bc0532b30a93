"""Exception types shared across the package."""


class CharslopeError(Exception):
    """Base class for all library errors."""


class KnotSyntaxError(CharslopeError):
    """Positioned syntax error raised by the expression parser."""

    def __init__(self, message, line, column, expected=(), found=None):
        self.line = line
        self.column = column
        self.expected = tuple(expected)
        self.found = found
        detail = message
        if self.expected:
            detail += " (expected " + " or ".join(self.expected) + ")"
        super().__init__("line %d, column %d: %s" % (line, column, detail))


class ValidationError(CharslopeError):
    """A satellite tree violates the structural invariants."""

    def __init__(self, violations):
        self.violations = tuple(violations)
        super().__init__(
            "invalid satellite tree: " + "; ".join(str(v) for v in self.violations)
        )


class MissingGeometryError(CharslopeError):
    """A geometry key could not be resolved, or a needed field is absent."""


class DbFormatError(CharslopeError):
    """The geometry database file is malformed or inconsistent."""


class PreconditionError(CharslopeError):
    """An operation was called outside its stated preconditions."""


class WindingError(PreconditionError):
    """A winding-number-zero precondition does not hold."""


class AnnotationError(PreconditionError):
    """Splice annotations are invalid or do not cover every torus."""
