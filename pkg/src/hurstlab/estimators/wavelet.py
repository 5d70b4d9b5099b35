"""Wavelet logscale-diagram estimator (Daubechies-3 octave energies).

A periodized orthonormal Daubechies-3 pyramid supplies per-octave detail
coefficients; the weighted regression of bias-corrected log2 octave
energies against octave number yields the scaling exponent, and
H = (slope + 1) / 2 for stationary increment noise.

Octave policy: by default octaves 3 .. log2(N) - 4 enter the fit.  When
that leaves fewer than three octaves (short series), the coarse end is
extended as long as an octave keeps at least 8 coefficients, then the
fine end is lowered towards octave 1.  Inputs that are not a power of two
are truncated down (never padded -- padding injects spurious
low-frequency energy).
"""

import math

import numpy as np
from scipy.special import digamma

from ..core import as_samples
from ..errors import InsufficientDataError
from .base import EstimatorId, HurstEstimate, clamp_estimate, fit_weighted_least_squares, require_length

__all__ = ["estimate_wavelet", "octave_energies", "dwt_step", "DB3_LOW", "DB3_HIGH"]

_LN2 = math.log(2.0)

# Daubechies-3 decomposition filters (sum of low = sqrt(2), orthonormal).
DB3_LOW = np.array(
    [
        0.3326705529509569,
        0.8068915093133388,
        0.4598775021193313,
        -0.13501102001039084,
        -0.08544127388224149,
        0.035226291882100656,
    ]
)
DB3_HIGH = ((-1.0) ** np.arange(6)) * DB3_LOW[::-1]

_MIN_COEFFS = 8  # coarsest usable octave keeps at least this many details


def dwt_step(s: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """One periodized analysis step: (approximation, detail), each len(s)/2."""
    n = s.size
    idx = (2 * np.arange(n // 2)[:, None] + np.arange(6)[None, :]) % n
    win = s[idx]
    return win @ DB3_LOW, win @ DB3_HIGH


def octave_energies(x, max_level: int) -> list[tuple[int, int, float]]:
    """(octave, coefficient count, mean squared detail) up to max_level."""
    arr = as_samples(x)
    out = []
    approx = arr
    for j in range(1, max_level + 1):
        approx, detail = dwt_step(approx)
        out.append((j, detail.size, float(np.mean(detail**2))))
    return out


def _octave_range(p: int) -> tuple[int, int]:
    log2p = int(math.log2(p))
    jmax = log2p - 3  # keeps >= 8 coefficients at the coarsest octave
    j1, j2 = 3, log2p - 4
    if j2 - j1 + 1 < 3:
        j2 = jmax
    if j2 - j1 + 1 < 3:
        j1 = max(1, j2 - 2)
    if j2 < 1 or j2 - j1 + 1 < 3:
        raise InsufficientDataError(
            f"series of length {p} spans fewer than 3 usable octaves"
        )
    return j1, j2


def estimate_wavelet(x) -> HurstEstimate:
    """Logscale-diagram estimate: H = (slope + 1) / 2.

    Octave ordinates are y_j = log2(mean detail^2) - g(n_j) with the
    chi-square small-sample correction g(n) = digamma(n/2)/ln 2 - log2(n/2),
    weighted by n_j * ln(2)^2 / 2.
    """
    arr = as_samples(x)
    require_length(arr)
    if float(np.ptp(arr)) == 0.0:
        raise InsufficientDataError("constant series carries no scaling information")
    p = 2 ** int(math.floor(math.log2(arr.size)))
    trimmed = arr[:p] - arr[:p].mean()
    j1, j2 = _octave_range(p)
    pts = []
    for j, n_j, mu in octave_energies(trimmed, j2):
        if j < j1 or mu <= 0.0:
            continue
        correction = digamma(n_j / 2.0) / _LN2 - math.log2(n_j / 2.0)
        y = math.log2(mu) - correction
        pts.append((float(j), y, n_j * _LN2**2 / 2.0))
    if len(pts) < 3:
        raise InsufficientDataError("fewer than 3 octaves with positive energy")
    fit = fit_weighted_least_squares(pts)
    h, clamped = clamp_estimate((fit.slope + 1.0) / 2.0)
    return HurstEstimate(
        EstimatorId.WAVELET,
        h,
        {
            "slope": fit.slope,
            "intercept": fit.intercept,
            "octaves": (j1, j2),
            "n_points": len(pts),
            "clamped": clamped,
        },
    )
