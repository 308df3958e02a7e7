"""Exception types shared across the package."""


class FlagforgeError(Exception):
    """Base class for all library errors."""


class NotPrime(FlagforgeError):
    pass


class FieldTooLarge(FlagforgeError):
    pass


class AmbientMismatch(FlagforgeError):
    pass


class TooManySubspaces(FlagforgeError):
    pass


class ResourceCapExceeded(FlagforgeError):
    pass


class GroupTooLarge(FlagforgeError):
    pass


class TooManyFlags(FlagforgeError):
    pass


class FaceIdentityViolation(FlagforgeError):
    pass


class NotMonotone(FlagforgeError):
    pass


class HypothesisFailed(FlagforgeError):
    """A computational hypothesis check failed; carries which one and where."""

    def __init__(self, which, where=None):
        self.which = which
        self.where = where
        super().__init__(f"hypothesis {which} failed at {where!r}")


class BadParameters(FlagforgeError):
    pass


class PreconditionFailed(FlagforgeError):
    pass


class TooLarge(FlagforgeError):
    pass


class ActionMismatch(FlagforgeError):
    pass


class TopChainAboveTop(FlagforgeError):
    pass


class GroupMismatch(FlagforgeError):
    pass


class WindowTooLarge(FlagforgeError):
    pass


class UnknownSuite(FlagforgeError):
    pass


class BudgetExceeded(FlagforgeError):
    pass


class IOFailure(FlagforgeError):
    pass
