"""Exception types raised by the library."""


class LeashError(Exception):
    """Base class for all library errors."""


class ResolutionTooLarge(LeashError, ValueError):
    pass


class SpaceMismatch(LeashError, ValueError):
    pass


class DepthOutOfRange(LeashError, ValueError):
    pass


class EpsTooSmall(LeashError, ValueError):
    pass


class InvalidParams(LeashError, ValueError):
    pass


class ModelMismatch(LeashError, ValueError):
    pass


class CapExceeded(LeashError, ValueError):
    pass


class RelatorViolated(LeashError, ValueError):
    def __init__(self, relator, message=None):
        self.relator = relator
        super().__init__(message or f"relator {relator} does not evaluate to the identity")


class ExactUnsupported(LeashError, ValueError):
    pass


class NoEnvelopeAvailable(LeashError, ValueError):
    pass


class NotANet(LeashError, ValueError):
    def __init__(self, element, message=None):
        self.element = element
        super().__init__(message or f"element {element!r} has no factorization h*gamma within the cap")


class DepthTooDeep(LeashError, ValueError):
    pass


class ParseError(LeashError, ValueError):
    def __init__(self, message, location=None):
        self.location = location
        if location is not None:
            message = f"{location}: {message}"
        super().__init__(message)
