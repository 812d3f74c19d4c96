"""Exception types raised by the library."""


class HalfEigError(Exception):
    """Base class for all library errors."""


class InvalidProblem(HalfEigError, ValueError):
    """Boundary data fails validation (bad nodes, lengths, or cone)."""


class NonPositiveGamma(HalfEigError, ValueError):
    pass


class BoundaryCriticalPoint(HalfEigError):
    """w' vanishes at an end point, so the function sits on the boundary
    of a nodal class."""


class RootCountMismatch(HalfEigError):
    def __init__(self, count, s=None, detail=""):
        self.count = count
        self.s = None if s is None else float(s)
        where = "" if s is None else f" at s={float(s)!r}"
        extra = f" ({detail})" if detail else ""
        super().__init__(f"expected 2 phase roots{where}, found {count}{extra}")


class IncompleteSpectrum(HalfEigError):
    pass


class BranchMismatch(HalfEigError):
    pass


class NotSplitInterval(HalfEigError, ValueError):
    pass


class BlowUp(HalfEigError, ArithmeticError):
    pass


class ConditionFails(HalfEigError):
    pass


class BranchLost(HalfEigError):
    pass
