"""Exception types shared across the package."""


class CatCAError(Exception):
    """Base class for all package errors."""


class MembershipError(CatCAError, ValueError):
    """An element does not belong to the group it is used with."""


class TypingError(CatCAError, TypeError):
    """Sources, targets, alphabets or universes do not line up."""


class CapabilityError(CatCAError):
    """The alphabet category has no element layer (e.g. Rel)."""


class InfiniteUniverseError(CatCAError):
    """A morphism-level construction was requested over an infinite group."""
