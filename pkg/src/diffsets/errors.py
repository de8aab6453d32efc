"""Exception types shared across the package."""


class DomainError(ValueError):
    """A precondition on arguments does not hold."""


class InvalidElementError(DomainError):
    """Element coordinates do not fit the group they are used with."""


class GroupMismatchError(DomainError):
    """Operands live in different groups."""


class UnsupportedRegimeError(DomainError):
    """Parameters fall outside the regimes a formula covers."""


class NodeBudgetExceeded(RuntimeError):
    """A search job was refused because its size estimate exceeds the budget.

    The job is refused up front, before any work is done; ``estimate`` is the
    upper bound on search nodes that triggered the refusal.
    """

    def __init__(self, estimate: int, budget: int):
        self.estimate = estimate
        self.budget = budget
        super().__init__(
            f"search refused: estimated {estimate} nodes exceeds budget {budget}"
        )
