"""Exception hierarchy shared by every module of the package."""


class FkpError(Exception):
    """Base class for all errors raised by fkpequiv."""


class InvalidSizeError(FkpError, ValueError):
    pass


class DimensionError(FkpError, ValueError):
    pass


class CapacityError(FkpError):
    """A size limit (matrix entries, oracle cap, enumeration cap) was exceeded."""


class NotAnFkpError(FkpError, ValueError):
    pass


class ParseError(FkpError, ValueError):
    pass


class OrderingError(FkpError, ValueError):
    pass


class NotCoprimeError(FkpError, ValueError):
    pass


class NotReducibleError(FkpError):
    pass


class InequivalentError(FkpError):
    """Raised when a witness is requested for two inequivalent FKPs.

    The row censuses of both sides are attached as evidence.
    """

    def __init__(self, message, census_a=None, census_b=None):
        super().__init__(message)
        self.census_a = census_a
        self.census_b = census_b
