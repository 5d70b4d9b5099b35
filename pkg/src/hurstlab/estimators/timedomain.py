"""Time-domain Hurst estimators: rescaled range and aggregated variance."""

import numpy as np

from ..core import aggregate, as_samples
from ..errors import InsufficientDataError
from .base import EstimatorId, HurstEstimate, fit_weighted_least_squares, clamp_estimate, require_length

__all__ = ["estimate_rs", "estimate_aggvar", "rs_statistic"]


def _pow2_grid(lo: int, hi: int) -> list[int]:
    out = []
    n = lo
    while n <= hi:
        out.append(n)
        n *= 2
    return out


def rs_statistic(x, block_size: int) -> float:
    """Mean rescaled range over non-overlapping blocks of the given size.

    Per block: range of the mean-adjusted cumulative sum divided by the
    block sample stddev (n-1).  Zero-stddev blocks are skipped; NaN if
    none survive.
    """
    arr = as_samples(x)
    n = int(block_size)
    nblocks = arr.size // n
    blocks = arr[: nblocks * n].reshape(nblocks, n)
    dev = blocks - blocks.mean(axis=1, keepdims=True)
    z = np.cumsum(dev, axis=1)
    rng = z.max(axis=1) - z.min(axis=1)
    std = dev.std(axis=1, ddof=1)
    ok = std > 0.0
    if not np.any(ok):
        return float("nan")
    return float(np.mean(rng[ok] / std[ok]))


def estimate_rs(x) -> HurstEstimate:
    """Classical rescaled-range estimate.

    Block sizes run over powers of two from 8 to N/4 (extended to N/2 when
    that leaves fewer than three sizes); H is the slope of
    log(mean R/S) against log(block size).
    """
    arr = as_samples(x)
    require_length(arr)
    sizes = _pow2_grid(8, arr.size // 4)
    if len(sizes) < 3:
        sizes = _pow2_grid(8, arr.size // 2)
    pts = []
    for n in sizes:
        rs = rs_statistic(arr, n)
        if np.isfinite(rs) and rs > 0.0:
            pts.append((np.log(n), np.log(rs), 1.0))
    if len(pts) < 3:
        raise InsufficientDataError("fewer than 3 usable R/S block sizes")
    fit = fit_weighted_least_squares(pts)
    h, clamped = clamp_estimate(fit.slope)
    return HurstEstimate(
        EstimatorId.RS,
        h,
        {
            "slope": fit.slope,
            "intercept": fit.intercept,
            "n_points": len(pts),
            "clamped": clamped,
        },
    )


def estimate_aggvar(x) -> HurstEstimate:
    """Aggregated-variance (variance-time) estimate.

    Sample variances of block-mean series over m in powers of two from 2
    to N/8 (at least 8 blocks per point); the slope beta of
    log Var against log m maps to H = 1 + beta/2.
    """
    arr = as_samples(x)
    require_length(arr)
    pts = []
    for m in _pow2_grid(2, arr.size // 8):
        v = float(np.var(aggregate(arr, m), ddof=1))
        if v > 0.0:
            pts.append((np.log(m), np.log(v), 1.0))
    if len(pts) < 3:
        raise InsufficientDataError("fewer than 3 usable aggregation levels")
    fit = fit_weighted_least_squares(pts)
    h, clamped = clamp_estimate(1.0 + fit.slope / 2.0)
    return HurstEstimate(
        EstimatorId.AGGVAR,
        h,
        {
            "slope": fit.slope,
            "intercept": fit.intercept,
            "n_points": len(pts),
            "clamped": clamped,
        },
    )
