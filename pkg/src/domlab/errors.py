"""Exception hierarchy shared by the library and the command line."""


class DomlabError(Exception):
    """Base class for every error raised by domlab."""


class InputError(DomlabError, ValueError):
    """Malformed or unsupported user input (CLI exit code 2)."""


class InvariantError(DomlabError):
    """An internal consistency check failed (CLI exit code 3)."""


class ExpressionSyntaxError(InputError):
    def __init__(self, message, position):
        super().__init__(f"{message} at position {position}")
        self.position = position


class CayleyTableError(InputError):
    pass


class NotClosed(CayleyTableError):
    pass


class NoIdentityAtZero(CayleyTableError):
    pass


class NotLatinSquare(CayleyTableError):
    pass


class NotAssociative(CayleyTableError):
    pass


class OrderCapExceeded(InputError):
    pass


class CycleDetected(InvariantError):
    """Two distinct classes dominate each other (a non-Hopfian situation)."""


class HopfianAssumptionMissing(InputError):
    pass


class DimensionMismatch(InputError):
    pass
