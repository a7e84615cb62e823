"""Exception hierarchy shared by every lpam module."""


class LpamError(ValueError):
    """Base class for all data and parameter errors raised by lpam."""


class ParseError(LpamError):
    """A text input could not be parsed; ``line`` is 1-based."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class MalformedLine(ParseError):
    pass


class SelfLoop(ParseError):
    pass


class DuplicateEdge(ParseError):
    pass


class UnknownNode(ParseError):
    pass


class EmptyCluster(ParseError):
    pass


class EmptyGraph(LpamError):
    pass


class DimensionTooSmall(LpamError):
    pass


class InvalidProbability(LpamError):
    pass


class EigenFailure(LpamError):
    pass


class DisconnectedGraph(LpamError):
    pass


class IsolatedNode(LpamError):
    pass


class EmptyMedoidSet(LpamError):
    pass


class InvalidK(LpamError):
    pass


class InvalidParams(LpamError):
    pass


class BudgetExceeded(LpamError):
    """The exact k-median search visited more tree nodes than allowed."""

    def __init__(self, budget, visited):
        self.budget = budget
        self.visited = visited
        super().__init__(
            f"branch-and-bound visited {visited} nodes, budget is {budget}; "
            "use the clarans solver for instances of this size"
        )


class DimensionMismatch(LpamError):
    pass


class InvalidTheta(LpamError):
    pass


class UniverseMismatch(LpamError):
    pass


class DegenerateCover(LpamError):
    pass


class DegenerateAgreement(LpamError):
    pass


class EmptyCover(LpamError):
    pass
