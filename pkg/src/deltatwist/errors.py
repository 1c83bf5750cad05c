"""Exception hierarchy shared across the package.

The CLI maps these onto exit codes: parse failures exit 2, enumeration
guards exit 3, precondition violations exit 4.
"""


class DeltaTwistError(Exception):
    """Base class for every error raised by this package."""


class ParseError(DeltaTwistError):
    """Malformed graph, set-system, or bouquet text."""


class MissingVerticesLine(ParseError):
    """Graph file whose first significant line is not 'vertices:'."""


class DuplicateEdge(ParseError):
    """The same unordered edge appears on two 'edge:' lines."""


class SelfEdgeViaEdgeLine(ParseError):
    """An 'edge: v v' line; loops belong on the 'loops:' line."""


class LabelCountNotTwo(ParseError):
    """A rotation token does not appear exactly twice."""


class UnknownTwistLabel(ParseError):
    """'twisted:' names an edge absent from the rotation."""


class DuplicateFeasible(ParseError):
    """The same feasible set appears twice."""


class PreconditionError(DeltaTwistError):
    """A documented operation precondition was violated."""


class UnknownLabel(PreconditionError):
    """A vertex label not present in the graph."""


class UnknownElement(PreconditionError):
    """A ground-set element not present in the set system."""


class UnknownEdgeLabel(PreconditionError):
    """An edge label not present in the bouquet."""


class LoopStatusMismatch(PreconditionError):
    """One-point join vertices must be both looped or both unlooped."""


class SingletonStatusMismatch(PreconditionError):
    """Set-system join elements must have equal singleton feasibility."""


class NotProper(PreconditionError):
    """The operation needs a nonempty feasible family."""


class NotNormal(PreconditionError):
    """The operation needs the empty set to be feasible."""


class HypothesisViolated(PreconditionError):
    """A checked structural hypothesis of a recursion does not hold.

    The message names the failing clause.
    """


class BadParams(PreconditionError):
    """Invalid parameters for a generator family."""


class DimensionMismatch(PreconditionError):
    """Matrix or block dimensions are inconsistent."""


class TooLarge(DeltaTwistError):
    """Instance exceeds the enumeration guard (see DELTATWIST_MAX_N)."""


class DivisionByZeroPoly(DeltaTwistError):
    """Polynomial division by the zero polynomial."""


class NonzeroRemainder(DeltaTwistError):
    """Exact polynomial division left a remainder.

    Inside the recursion formulas this signals a falsified divisibility
    hypothesis, so it is surfaced loudly instead of truncating.
    """
