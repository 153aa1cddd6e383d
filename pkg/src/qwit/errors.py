"""Exception types shared across the package."""


class QwitError(Exception):
    """Base class for errors raised by this package."""


class DimensionError(QwitError):
    """Operator or vector shape does not match the declared dimensions."""


class HermiticityError(QwitError):
    """Matrix handed to a Hermitian-only routine is not Hermitian."""


class NormalizationError(QwitError):
    """Vector or coefficient set violates its normalization requirement."""


class UnsupportedDimension(QwitError):
    """Requested construction is not defined at this dimension."""


class AnalyticUnavailable(QwitError):
    """No unambiguous closed form for these parameters; use the numeric path."""


class DegenerateParameters(QwitError):
    """Parameter combination makes a denominator vanish."""


class EmptyWindow(QwitError):
    """No feasible mixing weight for the explicit decomposition."""


class PSDViolation(QwitError):
    """A payload that must be positive semidefinite is not (internal error)."""


class Infeasible(QwitError):
    """Linear program has no feasible point."""


class Unbounded(QwitError):
    """Linear program objective is unbounded below."""
