"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class OrderError(Exception):
    """Base class for all errors raised by orderdim."""


class DuplicateLabel(OrderError):
    pass


class UnknownLabel(OrderError):
    pass


class IndexOutOfRange(OrderError, IndexError):
    pass


class CycleDetected(OrderError):
    """The relation closes to something with ``x < x``.

    ``cycle`` lists the labels of a witness cycle, first element repeated
    at the end.
    """

    def __init__(self, cycle):
        self.cycle = list(cycle)
        super().__init__("cycle: " + " -> ".join(str(c) for c in self.cycle))


class NotAChain(OrderError):
    pass


class NotIncomparableChains(OrderError):
    pass


class ChainsNotPairwiseIncomparable(NotIncomparableChains):
    pass


class InconsistentStream(OrderError):
    pass


class SizeMismatch(OrderError):
    pass


class NotAnExtension(OrderError):
    def __init__(self, index, pair):
        self.index = index
        self.pair = pair
        super().__init__(f"extension {index} puts {pair[1]} before {pair[0]} against the order")


class InvalidRealizer(OrderError):
    pass


class ElementNotRemoved(OrderError):
    pass


class BudgetExceeded(OrderError):
    """Dimension search ran out of nodes; ``lower``/``upper`` are proven bounds."""

    def __init__(self, lower, upper, nodes):
        self.lower = lower
        self.upper = upper
        self.nodes = nodes
        super().__init__(f"budget exceeded after {nodes} nodes: {lower} <= dim <= {upper}")


class TooLarge(OrderError):
    pass


class NotSeparated(OrderError):
    def __init__(self, message, index=None):
        self.index = index
        if index is not None:
            message = f"instance {index}: {message}"
        super().__init__(message)


class PointOutsideInterval(OrderError):
    pass


class BadArity(OrderError):
    pass


class InvalidInjection(OrderError):
    pass


class VariantArityMismatch(BadArity):
    pass


class MismatchedInputs(OrderError):
    pass


class NonMonotoneProgram(OrderError):
    pass


class DocumentError(OrderError):
    """Malformed or inconsistent input document (CLI exit code 1)."""
