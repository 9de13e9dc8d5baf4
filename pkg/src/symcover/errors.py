"""Shared exception types."""


class SizeBoundExceeded(ValueError):
    """An instance is larger than the configured size bound allows."""


class OddCocycleValue(ArithmeticError):
    """An order-cocycle entry came out odd; the binding values must be even."""


class MathExpectationError(AssertionError):
    """An internally checked mathematical identity failed to hold."""
