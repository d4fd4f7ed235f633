"""Exception types shared across the package."""


class FormalRingError(Exception):
    """Base class for every error raised by fmrings."""


class MixedRings(FormalRingError, TypeError):
    pass


class DimensionMismatch(FormalRingError, ValueError):
    pass


class ShapeMismatch(FormalRingError, ValueError):
    pass


class IndexOutOfRange(FormalRingError, IndexError):
    pass


class Violation(FormalRingError, ValueError):
    """A candidate factor table breaks one of the defining identities.

    ``kind`` is ``"normalization"`` or ``"cocycle"``; ``indices`` are 1-based.
    """

    def __init__(self, kind, indices, detail=""):
        self.kind = kind
        self.indices = tuple(indices)
        msg = f"{kind} violated at {self.indices}"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)


class BadExponentMatrix(FormalRingError, ValueError):
    def __init__(self, reason, indices):
        self.reason = reason
        self.indices = tuple(indices)
        super().__init__(f"exponent matrix fails {reason} condition at {self.indices}")


class BadClassMap(FormalRingError, ValueError):
    pass


class HypothesisViolated(FormalRingError, ValueError):
    def __init__(self, which, detail=""):
        self.which = which
        super().__init__(f"{which}: {detail}" if detail else which)


class NotBinary(FormalRingError, ValueError):
    pass


class NotTransitive(FormalRingError, ValueError):
    def __init__(self, i, j, k):
        self.indices = (i, j, k)
        super().__init__(f"similarity is not transitive on {self.indices}")


class TooLarge(FormalRingError, ValueError):
    def __init__(self, required, limit):
        self.required = required
        self.limit = limit
        super().__init__(f"ring has {required} elements, limit is {limit}")


class NotAnIdeal(FormalRingError, ValueError):
    pass
