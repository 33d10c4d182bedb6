"""Exception hierarchy shared by every layer of the package.

Each error carries a default HTTP status so the server adapter can map
domain failures onto wire responses without a big lookup table.
"""


class KnohubError(Exception):
    """Base class for all domain errors."""

    http_status = 400


class ValidationError(KnohubError):
    """Input outside its declared domain (degree range, empty title, bad score...)."""

    http_status = 422


class LineageError(KnohubError):
    """Version derivation attempted from an unusable parent."""


class UsageError(KnohubError):
    """Usage recording attempted on a logically deleted element."""

    http_status = 409


class ImmutabilityError(KnohubError):
    """Mutation of a published element beyond ranking updates and usage appends."""

    http_status = 409


class NotFoundError(KnohubError):
    http_status = 404


class ConflictError(KnohubError):
    """Duplicate identifier within one knowledge base."""

    http_status = 409


class AccessError(KnohubError):
    """Caller not authorized for the target knowledge base scope."""

    http_status = 403


class AuthError(KnohubError):
    """Missing, unknown, or expired session token."""

    http_status = 401


class TransitionError(KnohubError):
    """Undefined (state, event) pair in a state machine."""

    http_status = 409


class StateError(KnohubError):
    """Operation valid in general but not in the object's current state."""

    http_status = 409


class ParseError(KnohubError):
    """Malformed interchange document; message includes the offending line."""

    http_status = 422


class BackpressureError(KnohubError):
    """Agent command queue is full; the caller should retry later."""

    http_status = 503


class ServerUnavailable(KnohubError):
    """The shared server could not be reached at the transport level."""

    http_status = 503


def error_by_name(name: str) -> type[KnohubError]:
    """Map an error class name from the wire back to its class."""
    cls = globals().get(name)
    if isinstance(cls, type) and issubclass(cls, KnohubError):
        return cls
    return KnohubError
