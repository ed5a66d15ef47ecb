"""Exception types shared across the package."""


class ParameterError(ValueError):
    """An argument violates a documented precondition."""


class BudgetExceededError(RuntimeError):
    """The exact search would exceed the configured work budget."""

    def __init__(self, candidates: int, bound: int, budget: int):
        self.candidates = candidates
        self.bound = bound
        self.budget = budget
        super().__init__(
            f"instance too large: {candidates} candidates with size bound {bound} "
            f"exceed the work budget of {budget} subset evaluations"
        )
