"""Exception hierarchy shared by every module."""


class KaroubiError(Exception):
    """Base class for all errors raised by this package."""


class DomainMismatchError(KaroubiError):
    """Morphisms are not composable, or an endomorphism was expected."""


class ShapeError(DomainMismatchError):
    """Matrix shapes are inconsistent."""


class PreconditionError(KaroubiError):
    """An operation was called on inputs violating its contract."""


class UnsupportedRingError(KaroubiError):
    """The operation needs division, but the ring is not a field."""


class InvalidTildeExtensionError(PreconditionError):
    """A triple (e_A, alpha, e_C) is not fixed by its idempotents."""


class MembershipError(KaroubiError):
    """An object is not (known to be) in the weak idempotent completion."""


class GenerationError(KaroubiError):
    """A sample generator produced ill-typed data."""


class InternalConsistencyError(KaroubiError):
    """A construction produced data violating an invariant it guarantees."""
