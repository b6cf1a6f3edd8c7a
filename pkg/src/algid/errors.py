"""Exception types shared across the package."""


class AlgidError(Exception):
    """Base class for every domain error raised by this package."""


class VersionMismatch(AlgidError):
    """Operands or arguments belong to different group versions."""


class RankOutOfRange(AlgidError):
    """A rank fell outside [0, p**6) or outside the class required here."""


class NonCanonical(AlgidError):
    """Digest or import text violates the canonical layout rules."""


class NoDigestSupport(AlgidError):
    """Test versions have no digest length and cannot encode or decode."""


class ThetaExhausted(AlgidError):
    """More reserved slot elements were requested than the alphabet holds."""


class NotAFunction(AlgidError):
    """An ordered (function-class) element was required."""


class InvalidKey(AlgidError):
    """A map key, slot name, or removal token failed validation."""


class RemovalsDisabled(AlgidError):
    """Removal operations require the tuple state to opt in explicitly."""


class BadPosition(AlgidError):
    """A slot position, index, or name did not match exactly one slot."""


class NotFound(AlgidError):
    """No stored payload under the given digest."""


class ContentConflict(AlgidError):
    """A digest is already bound to different content or a different alias."""


class RefusedSize(AlgidError):
    """An exhaustive computation was refused because it would be too large."""


class PlanError(AlgidError):
    """A plan file is malformed or uses an unsupported construct."""
