class BudgetExceeded(RuntimeError):
    """Raised before starting a computation whose estimated work is over budget."""

    def __init__(self, what: str, estimate: int, budget: int):
        self.what = what
        self.estimate = estimate
        self.budget = budget
        super().__init__(f"{what}: estimated work {estimate} exceeds budget {budget}")


class InapplicableMethod(ValueError):
    """The requested method does not apply to the given (m, n)."""
