class WquotError(Exception):
    pass


class BoundExceeded(WquotError):
    """A construction exceeded its configured state/iteration budget."""

    def __init__(self, message, bound=None):
        super().__init__(message)
        self.bound = bound


class Unsupported(WquotError):
    """The requested operation is not available for this semiring or input."""


class NotProper(WquotError):
    pass


class NonCommutative(WquotError):
    pass


class NotSubFactorization(WquotError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NotDominated(WquotError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class ClassNotFound(WquotError):
    pass


class MixedSemiring(WquotError, ValueError):
    pass
