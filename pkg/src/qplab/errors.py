"""Exception types shared across the package."""


class QPLabError(Exception):
    """Base class for package errors."""


class PreconditionError(QPLabError, ValueError):
    """An operation was called outside its stated domain."""


class ResidueClassError(PreconditionError):
    """An index violates a required congruence class."""


class InhomogeneousInputError(QPLabError, ValueError):
    """A graded operation received a vector mixing several degrees."""


class UnsupportedChargeError(QPLabError, ValueError):
    """Quasi-particle charge outside the supported range."""


class BudgetError(QPLabError, RuntimeError):
    """A computation exceeded its configured size or time budget."""


class FitDegenerateError(QPLabError, RuntimeError):
    """A constant fit found no usable nonzero coefficient on any probe."""


class ResidualFailure(QPLabError, AssertionError):
    """An exact-equality verification found a nonzero residual."""

    def __init__(self, relation, where, lhs=None, rhs=None):
        self.relation = relation
        self.where = where
        self.lhs = lhs
        self.rhs = rhs
        super().__init__(f"{relation}: first failing coefficient at {where}")
