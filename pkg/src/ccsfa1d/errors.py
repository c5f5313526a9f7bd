"""Exception hierarchy shared by all solver modules."""


class Ccsfa1dError(Exception):
    """Base class for all errors raised by this package."""


class BarrierSuppressionError(Ccsfa1dError):
    """The static barrier has no real tunnel exit (over-the-barrier field)."""


class CoreProximityError(Ccsfa1dError):
    """A trajectory entered the exclusion disk around the Coulomb core."""


class QuadratureError(Ccsfa1dError):
    """A contour or coordinate quadrature failed to reach its tolerance."""


class SaddleConvergenceError(Ccsfa1dError):
    """Newton iteration on the saddle-point equations did not converge."""


class BranchError(Ccsfa1dError):
    """A solver converged onto the mirror (unphysical) saddle branch."""


class CausticError(Ccsfa1dError):
    """The saddle Hessian is degenerate; perturbative corrections break down."""


class ShootingError(Ccsfa1dError):
    """The complex-trajectory shooting solver failed to converge."""
