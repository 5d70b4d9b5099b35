"""Hurst-index estimators behind one uniform, pure-function interface."""

from ..errors import InvalidArgumentError
from .base import (
    CLAMP_HI,
    CLAMP_LO,
    EstimatorId,
    HurstEstimate,
    LogLogFit,
    fit_weighted_least_squares,
)
from .spectral import (
    estimate_periodogram,
    estimate_whittle,
    fgn_spectral_density,
    periodogram,
    whittle_objective,
)
from .timedomain import estimate_aggvar, estimate_rs, rs_statistic
from .wavelet import estimate_wavelet, octave_energies

__all__ = [
    "EstimatorId",
    "HurstEstimate",
    "LogLogFit",
    "fit_weighted_least_squares",
    "estimate_rs",
    "estimate_aggvar",
    "estimate_periodogram",
    "estimate_whittle",
    "estimate_wavelet",
    "estimate",
    "periodogram",
    "rs_statistic",
    "octave_energies",
    "fgn_spectral_density",
    "whittle_objective",
    "CLAMP_LO",
    "CLAMP_HI",
]

_DISPATCH = {
    EstimatorId.RS: estimate_rs,
    EstimatorId.AGGVAR: estimate_aggvar,
    EstimatorId.PERIODOGRAM: estimate_periodogram,
    EstimatorId.WHITTLE: estimate_whittle,
    EstimatorId.WAVELET: estimate_wavelet,
}


def estimate(method, x) -> HurstEstimate:
    """Dispatch to the named estimator; accepts EstimatorId or its string value."""
    try:
        method = EstimatorId(method)
    except ValueError:
        raise InvalidArgumentError(f"unknown estimator {method!r}") from None
    return _DISPATCH[method](x)
