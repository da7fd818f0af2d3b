"""Shared exception types."""


class BudgetExceededError(RuntimeError):
    """An enumeration or closure exceeded its configured work budget."""
