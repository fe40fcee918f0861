"""Exception hierarchy shared by every solver."""


class CoordNEError(Exception):
    """Base class for all errors raised by this package."""


class InvalidGame(CoordNEError, ValueError):
    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations) or "invalid game")


class InvalidStrategy(CoordNEError, ValueError):
    pass


class InvalidQuery(CoordNEError, ValueError):
    pass


class EmptyQuery(InvalidQuery):
    pass


class CapExceeded(CoordNEError):
    def __init__(self, size, cap):
        self.size = size
        self.cap = cap
        super().__init__(f"{size} joint strategies exceed the enumeration cap {cap}")


class PreconditionViolated(CoordNEError):
    """The game or query is outside the class a solver handles."""


class MoreThanTwoColours(PreconditionViolated):
    pass


class NonMonochromaticQuery(PreconditionViolated):
    pass


class NotASimpleCycle(PreconditionViolated):
    pass


class NotADAG(PreconditionViolated):
    pass


class OutDegreeExceeded(PreconditionViolated):
    pass


class NotUnweighted(PreconditionViolated):
    pass


class ColourCapExceeded(PreconditionViolated):
    pass


class Intractable(CoordNEError):
    """No specialised solver applies and the oracle cap is exceeded."""


class InternalSoundness(CoordNEError, RuntimeError):
    """A solver produced a certificate that failed re-verification."""


class FormulaError(CoordNEError, ValueError):
    pass


class NonIntegerWeight(CoordNEError, ValueError):
    pass
