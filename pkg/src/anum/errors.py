"""Shared exception types."""


class BudgetExceededError(RuntimeError):
    """An enumeration would exceed the configured column budget."""


class InvariantViolationError(RuntimeError):
    """An internal cross-check that must hold mathematically has failed."""


class PreDelayError(ValueError):
    """The closed form was evaluated below its validity delay."""
