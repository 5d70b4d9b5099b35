"""Shared estimator surface: method ids, result record, log-log regression."""

import enum
from dataclasses import dataclass, field

import numpy as np

from ..errors import DegenerateInputError, InsufficientDataError, InvalidArgumentError

__all__ = [
    "EstimatorId",
    "HurstEstimate",
    "LogLogFit",
    "fit_weighted_least_squares",
    "clamp_estimate",
    "require_length",
    "CLAMP_LO",
    "CLAMP_HI",
]

# Estimates whose slope mapping escapes (0, 1) are clamped into this range
# and flagged, so study statistics stay computable.
CLAMP_LO = 0.01
CLAMP_HI = 0.99


class EstimatorId(str, enum.Enum):
    RS = "rs"
    AGGVAR = "aggvar"
    PERIODOGRAM = "periodogram"
    WHITTLE = "whittle"
    WAVELET = "wavelet"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class HurstEstimate:
    """One estimator's output: point estimate plus method diagnostics."""

    method: EstimatorId
    h_hat: float
    diagnostics: dict = field(default_factory=dict)

    @property
    def clamped(self) -> bool:
        return bool(self.diagnostics.get("clamped", False))

    @property
    def flags(self) -> list[str]:
        out = []
        if self.clamped:
            out.append("clamped")
        if self.diagnostics.get("boundary", False):
            out.append("boundary")
        return out


@dataclass(frozen=True)
class LogLogFit:
    """Weighted least-squares line through (abscissa, ordinate, weight) triples."""

    points: tuple
    slope: float
    intercept: float


def fit_weighted_least_squares(points) -> LogLogFit:
    """Fit y = slope*x + intercept by weighted least squares.

    ``points`` is an iterable of (x, y, weight) with positive weights;
    at least 3 points and at least 2 distinct abscissas are required.
    Unit weights reduce this to ordinary least squares.
    """
    pts = tuple((float(x), float(y), float(w)) for x, y, w in points)
    if len(pts) < 3:
        raise InsufficientDataError(f"need >= 3 points to fit, got {len(pts)}")
    x = np.array([p[0] for p in pts])
    y = np.array([p[1] for p in pts])
    w = np.array([p[2] for p in pts])
    if np.any(w <= 0.0):
        raise InvalidArgumentError("weights must be positive")
    if not (np.all(np.isfinite(x)) and np.all(np.isfinite(y))):
        raise InvalidArgumentError("fit points must be finite")
    xbar = np.average(x, weights=w)
    ybar = np.average(y, weights=w)
    sxx = float(np.sum(w * (x - xbar) ** 2))
    if sxx == 0.0:
        raise DegenerateInputError("all abscissas are equal; slope undefined")
    slope = float(np.sum(w * (x - xbar) * (y - ybar)) / sxx)
    intercept = float(ybar - slope * xbar)
    return LogLogFit(pts, slope, intercept)


def clamp_estimate(raw: float) -> tuple[float, bool]:
    """Clamp a raw H estimate into [CLAMP_LO, CLAMP_HI]."""
    if raw < CLAMP_LO:
        return CLAMP_LO, True
    if raw > CLAMP_HI:
        return CLAMP_HI, True
    return float(raw), False


def require_length(arr: np.ndarray, minimum: int = 64):
    if arr.size < minimum:
        raise InsufficientDataError(
            f"estimator needs at least {minimum} samples, got {arr.size}"
        )
