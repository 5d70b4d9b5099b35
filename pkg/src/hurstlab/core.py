"""Core series type, block aggregation and second-order statistics.

Conventions used throughout the package:

* Block aggregation is the block *mean* (the variance scaling law
  ``Var(x) = m**(2-2H) * Var(aggregate(x, m))`` holds for means).
* Sample standard deviations use the n-1 denominator.
* The sample autocorrelation is the biased (divide by the lag-0 sum)
  estimate, which is positive semidefinite.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateInputError, InsufficientDataError, InvalidArgumentError

__all__ = [
    "TimeSeries",
    "as_samples",
    "validate_hurst",
    "aggregate",
    "exact_autocorrelation",
    "sample_autocorrelation",
    "summary_stats",
]


@dataclass(frozen=True)
class TimeSeries:
    """An immutable, finite, 1-D series of real-valued samples."""

    samples: np.ndarray = field(repr=False)

    def __post_init__(self):
        arr = np.asarray(self.samples, dtype=np.float64)
        if arr.ndim != 1:
            raise InvalidArgumentError("samples must be one-dimensional")
        if arr.size < 1:
            raise InvalidArgumentError("a series needs at least one sample")
        if not np.all(np.isfinite(arr)):
            raise InvalidArgumentError("samples must be finite (no NaN/inf)")
        arr = arr.copy()
        arr.flags.writeable = False
        object.__setattr__(self, "samples", arr)

    def __len__(self):
        return int(self.samples.size)

    @property
    def n(self) -> int:
        return int(self.samples.size)


def as_samples(x) -> np.ndarray:
    """Coerce a TimeSeries or array-like to a validated float64 vector."""
    if isinstance(x, TimeSeries):
        return x.samples
    arr = np.asarray(x, dtype=np.float64)
    if arr.ndim != 1 or arr.size < 1:
        raise InvalidArgumentError("expected a non-empty 1-D series")
    if not np.all(np.isfinite(arr)):
        raise InvalidArgumentError("samples must be finite (no NaN/inf)")
    return arr


def validate_hurst(hurst: float) -> float:
    """Check 0 < H < 1 and return H as a float."""
    h = float(hurst)
    if not 0.0 < h < 1.0 or not np.isfinite(h):
        raise InvalidArgumentError(f"Hurst index must lie in (0, 1), got {hurst!r}")
    return h


def aggregate(x, block_size: int) -> np.ndarray:
    """Non-overlapping block means; the trailing remainder is discarded.

    ``block_size`` must satisfy 1 <= block_size <= len(x).
    """
    arr = as_samples(x)
    m = int(block_size)
    if m < 1:
        raise InvalidArgumentError(f"block size must be >= 1, got {block_size}")
    if m > arr.size:
        raise InvalidArgumentError(
            f"block size {m} exceeds series length {arr.size}"
        )
    nblocks = arr.size // m
    return arr[: nblocks * m].reshape(nblocks, m).mean(axis=1)


def exact_autocorrelation(hurst: float, lag: int) -> float:
    """Autocorrelation of an exactly second-order self-similar process.

    rho(k) = 0.5 * ((k+1)**(2H) - 2*k**(2H) + (k-1)**(2H)) for k >= 1,
    and rho(0) = 1.
    """
    h = validate_hurst(hurst)
    k = int(lag)
    if k < 0:
        raise InvalidArgumentError("lag must be >= 0")
    if k == 0:
        return 1.0
    e = 2.0 * h
    return 0.5 * ((k + 1.0) ** e - 2.0 * float(k) ** e + (k - 1.0) ** e)


def sample_autocorrelation(x, lag: int, mean=None) -> float:
    """Biased sample autocorrelation at the given lag.

    Centers on the sample mean by default; pass ``mean`` to center on a
    known process mean instead (useful when validating synthetic signals,
    where sample-mean centering absorbs Var(mean) and depresses every lag).
    """
    arr = as_samples(x)
    k = int(lag)
    if k < 0 or k >= arr.size:
        raise InvalidArgumentError(f"lag must satisfy 0 <= lag < {arr.size}")
    mu = float(np.mean(arr)) if mean is None else float(mean)
    dev = arr - mu
    denom = float(np.dot(dev, dev))
    if denom == 0.0:
        raise DegenerateInputError("series has zero variance")
    if k == 0:
        return 1.0
    return float(np.dot(dev[:-k], dev[k:]) / denom)


def summary_stats(values) -> tuple[float, float]:
    """(mean, sample stddev) with the n-1 denominator."""
    arr = np.asarray(values, dtype=np.float64)
    if arr.ndim != 1 or arr.size < 2:
        raise InsufficientDataError("need at least 2 values for a sample stddev")
    return float(np.mean(arr)), float(np.std(arr, ddof=1))
