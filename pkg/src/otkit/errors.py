"""Exception types shared across the package."""


class OtkitError(Exception):
    """Base class for all otkit errors."""


class DegenerateInput(OtkitError):
    """Point set violates general position (collinear triple or repeated point)."""

    def __init__(self, message, triple=None):
        super().__init__(message)
        self.triple = triple


class TruncatedFile(OtkitError):
    """Binary order-type stream length is not a multiple of the record size."""


class InvalidEntry(OtkitError):
    """A small-lambda entry is out of range for the given point count."""


class AxiomViolation(OtkitError):
    """A decoded record admits no orientation map consistent with the axioms."""


class IndexOverlap(OtkitError):
    """Segment endpoints passed to a crossing query are not pairwise distinct."""


class ParseError(OtkitError):
    def __init__(self, message, offset=None):
        super().__init__(message)
        self.offset = offset


class DuplicateEdge(ParseError):
    pass


class Loop(ParseError):
    pass


class NotStacked(OtkitError):
    """Operation requires a stacked triangulation."""


class TooManyVertices(OtkitError):
    """Graph has more vertices than the point set has points."""


class SolverTimeout(OtkitError):
    """SAT search exceeded its conflict or wall-clock budget."""

    def __init__(self, message, context=None):
        super().__init__(message)
        self.context = context


class WitnessInvalid(OtkitError):
    """A satisfying assignment decoded to a mapping that fails the geometric check.

    This always indicates a bug in the encoder or the solver and must abort.
    """


class Infeasible(OtkitError):
    """Some order type embeds every graph, so no hitting set exists."""

    def __init__(self, message, row=None):
        super().__init__(message)
        self.row = row


class WrongSize(OtkitError):
    """Input has the wrong number of points for this pipeline stage."""


class OutOfRange(OtkitError):
    """Numeric argument outside the supported domain."""
