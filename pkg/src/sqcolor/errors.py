"""Exception hierarchy shared by the solvers."""

from .graph import GraphError

__all__ = [
    "GraphError",
    "ColoringError",
    "StuckAt",
    "PreconditionViolated",
    "ListTooShort",
    "Disconnected",
    "PetersenInput",
    "MadTooLarge",
    "GirthTooSmall",
    "InternalCaseFailure",
    "NoConfigurationFound",
]


class ColoringError(Exception):
    """Base class for list-colouring failures."""


class StuckAt(ColoringError):
    """A greedy step found an empty remaining list."""

    def __init__(self, vertex, message=None):
        self.vertex = vertex
        super().__init__(message or f"no colour left at vertex {vertex}")


class PreconditionViolated(ColoringError):
    def __init__(self, clause, message=None):
        self.clause = clause
        super().__init__(message or clause)


class ListTooShort(PreconditionViolated):
    def __init__(self, vertex, size, required):
        self.vertex = vertex
        super().__init__("list size", f"vertex {vertex} has a list of size {size} < {required}")


class Disconnected(PreconditionViolated):
    def __init__(self, message="graph is disconnected"):
        super().__init__("connected", message)


class PetersenInput(PreconditionViolated):
    def __init__(self):
        super().__init__("non-Petersen", "PetersenInput: the Petersen graph's square is K10")


class MadTooLarge(PreconditionViolated):
    def __init__(self, mad, bound):
        self.mad = mad
        self.bound = bound
        super().__init__("mad", f"MadTooLarge: mad = {mad} is not below {bound}")


class GirthTooSmall(PreconditionViolated):
    def __init__(self, girth, bound):
        self.girth = girth
        super().__init__("girth", f"GirthTooSmall: girth = {girth} < {bound}")


class InternalCaseFailure(RuntimeError):
    """A case analysis reached a state its proof rules out.  Always a bug."""

    def __init__(self, message, trace=None):
        self.trace = trace
        text = message
        if trace is not None and len(trace):
            text += "\n--- trace ---\n" + trace.dump()
        super().__init__(text)


class NoConfigurationFound(InternalCaseFailure):
    """Decomposition stalled on a nonempty graph that meets the density bound."""

    def __init__(self, remainder, mode, trace=None):
        self.remainder = remainder
        self.mode = mode
        super().__init__(
            f"theorem violation: no {mode} reducible configuration in a remainder "
            f"with {len(remainder)} vertices",
            trace,
        )
