"""Exception types raised by photonholes."""


class PhotonHolesError(Exception):
    """Base class for all package errors."""


class CutoffError(PhotonHolesError):
    """A state cannot be truncated within the configured ``hard_max``."""


class IllConditionedFitError(PhotonHolesError):
    """The sampling system used to recover polynomial coefficients is ill conditioned."""


class NoConvergenceError(PhotonHolesError):
    """Newton refinement did not reach the residual threshold."""


class RootCollisionError(PhotonHolesError):
    """Two refined hole solutions coincide; the underlying root is degenerate."""


class ZeroMeanError(PhotonHolesError, ZeroDivisionError):
    """A correlation function was requested for a mode with zero mean photon number."""


class ConfigError(PhotonHolesError, ValueError):
    """Invalid or inconsistent run configuration."""
