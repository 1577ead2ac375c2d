"""Exception hierarchy shared by every module of the package."""


class AdaCoverError(Exception):
    """Base class for all package errors."""


class ZeroProbabilityRealization(AdaCoverError):
    """A partial realization has zero probability under the prior."""


class ItemAlreadyObserved(AdaCoverError):
    """Marginal benefit requested for an item already in dom(psi)."""


class CoverabilityViolation(AdaCoverError):
    """The utility cannot reach its quota on some realization."""


class PolicyStuck(AdaCoverError):
    """A policy repeated an item or ran past the number of items."""


class EnumerationTooLarge(AdaCoverError):
    """Explicit enumeration would exceed the configured cap."""


class UnidentifiableInstance(AdaCoverError):
    """Two hypotheses have identical outcome vectors."""


class UncoverableElement(AdaCoverError):
    """Some ground-set element is contained in no set."""


class MismatchedQuota(AdaCoverError):
    """Utilities combined together do not share a common quota."""


class InvalidTrace(AdaCoverError):
    """A trace selects an item after its utility was already covered."""


class InstanceTooLarge(AdaCoverError):
    """The exact oracle refuses an instance above its size caps."""


class NonIntegralCosts(AdaCoverError):
    """The moment oracle requires integral item costs."""
