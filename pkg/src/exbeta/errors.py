"""Exception hierarchy shared by all exbeta modules."""


class ExbetaError(Exception):
    """Base class for every error raised by this package."""


class DomainError(ExbetaError, ValueError):
    """Parameters or arguments outside the supported domain."""


class NonConvergence(ExbetaError, RuntimeError):
    """An iterative scheme (quadrature level doubling, series truncation)
    exhausted its budget before reaching the requested tolerance."""


class CancellationLoss(ExbetaError, ArithmeticError):
    """An alternating sum destroyed so many leading digits that the result
    would be dominated by roundoff.  Raised instead of returning noise."""


class NonFinite(ExbetaError, ArithmeticError):
    """An integrand returned inf or nan at a quadrature node."""
