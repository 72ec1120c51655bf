"""Exceptions and warnings shared across the toolkit."""


class ContinuumRegimeWarning(UserWarning):
    """Stark coupling at or above twice the cavity frequency: the photon
    ladder is unbounded below and truncated numerics will not converge."""


class DimensionOverflow(Exception):
    """Requested basis exceeds the configured dimension cap."""


class SectorMismatch(Exception):
    """Parity-sector selector is unknown or inconsistent with the basis."""


class DimensionMismatch(Exception):
    """Vector length does not match the operator dimension."""


class NoConvergence(Exception):
    """Iterative eigensolver failed to converge within its iteration budget."""

    def __init__(self, message, max_iters=None):
        super().__init__(message)
        self.max_iters = max_iters


class DegenerateBreakdown(Exception):
    """Krylov basis collapsed; all restart attempts exhausted."""


class InsufficientStates(Exception):
    """Spectrum does not contain enough converged states for the request."""


class CutoffRunaway(Exception):
    """Photon-cutoff ladder hit its cap without meeting the convergence
    conditions.  ``trail`` holds one (n_max, ground_energy, tail_probability)
    triple per ladder rung."""

    def __init__(self, message, trail):
        super().__init__(message)
        self.trail = list(trail)


class UnphysicalVarsigma(Exception):
    """Atomic order parameter outside the physical range (varsigma^2 > 1)."""


class ClosedFormBranchError(Exception):
    """Closed-form order parameters disagree with the numerical minimizer."""

    def __init__(self, message, closed_form=None, minimizer=None):
        super().__init__(message)
        self.closed_form = closed_form
        self.minimizer = minimizer


class RootNotBracketed(Exception):
    """Sign analysis promised a stationarity root but none was found."""


class InsufficientPoints(Exception):
    """Too few data points inside the fitting window."""


class NonPositiveObservable(Exception):
    """Log-log fit requested on data containing values <= 0."""


class WindowEmpty(Exception):
    """No data points fall inside the requested reduced-variable window."""


class ConfigError(Exception):
    """Malformed configuration file or unknown configuration key."""
