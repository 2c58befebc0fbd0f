"""Shared exception types."""


class SizeLimitError(RuntimeError):
    """An enumeration would exceed its configured desk-scale bound."""


class FieldMismatchError(ValueError):
    """Operands belong to different finite fields."""


class IntegrityError(RuntimeError):
    """Internal cross-check failed: the data contradicts an identity the
    construction is supposed to guarantee."""
