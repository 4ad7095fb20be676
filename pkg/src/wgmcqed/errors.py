"""Exception types raised by the numerical routines."""


class WgmError(Exception):
    """Base class for failures of the resonance/volume/Q machinery."""


class NoResonanceError(WgmError):
    """No sign change of the characteristic function inside the scan window."""


class ConvergenceError(WgmError, ArithmeticError):
    """An iterative method (Newton, continued fraction, quadrature) did not converge."""


class NoCrossingError(WgmError):
    """The n0 and N0 curves do not cross inside the swept rows."""


class RadiativeQWarning(UserWarning):
    """Asymptotic radiative Q evaluated below its stated accuracy range (l < 18)."""
