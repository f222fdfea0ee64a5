"""Exception hierarchy shared by every module."""


class RBHopfError(Exception):
    pass


class FieldMismatchError(RBHopfError, ValueError):
    pass


class ShapeError(RBHopfError, ValueError):
    pass


class HypothesisError(RBHopfError):
    """A construction or checker precondition failed.

    ``reason`` is a short stable name ("not convolution-idempotent", ...) that
    tests and the CLI match on.
    """

    def __init__(self, reason: str, detail: str = ""):
        self.reason = reason
        self.detail = detail
        super().__init__(f"{reason}: {detail}" if detail else reason)


class SearchSpaceTooLarge(HypothesisError):
    def __init__(self, detail: str = ""):
        super().__init__("search space too large", detail)


class ConsistencyError(RBHopfError, AssertionError):
    """Two independent routes to the same fact disagreed."""
