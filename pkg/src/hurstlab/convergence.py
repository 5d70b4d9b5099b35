"""Growing-prefix convergence tracks and sliding-window estimation.

A track is a sequence of (position, estimate) points.  Prefix tracks
estimate on the first tau0, tau0 + tau_u, tau0 + 2*tau_u, ... samples;
window tracks estimate on [t, t + window) for t = 0, step, 2*step, ...
Estimator failures become explicit gaps (None), never interpolations.
Averaged tracks take the pointwise mean across series, averaging over
the survivors at each position and recording their count.
"""

import json
from dataclasses import dataclass, field
from functools import partial

import numpy as np

from ._parallel import keyed_map
from .core import as_samples
from .errors import HurstLabError, InsufficientDataError, InvalidArgumentError
from .estimators import EstimatorId, estimate

__all__ = [
    "ConvergenceConfig",
    "WindowConfig",
    "ConvergenceTrack",
    "converge",
    "converge_mean",
    "sliding_window",
    "track_to_csv",
    "track_to_json",
]

TRACK_CSV_VERSION = "# hurstlab-track v1"
TRACK_JSON_FORMAT = "hurstlab-track/v1"


@dataclass(frozen=True)
class ConvergenceConfig:
    method: EstimatorId
    tau0: int = 64
    tau_u: int = 200

    def __post_init__(self):
        object.__setattr__(self, "method", EstimatorId(self.method))
        if int(self.tau0) < 64:
            raise InvalidArgumentError("tau0 must be >= 64")
        if int(self.tau_u) < 1:
            raise InvalidArgumentError("tau_u must be >= 1")
        object.__setattr__(self, "tau0", int(self.tau0))
        object.__setattr__(self, "tau_u", int(self.tau_u))

    def prefix_lengths(self, total: int) -> list:
        if total < self.tau0:
            raise InsufficientDataError(
                f"series of length {total} is shorter than tau0={self.tau0}"
            )
        return list(range(self.tau0, total + 1, self.tau_u))


@dataclass(frozen=True)
class WindowConfig:
    method: EstimatorId
    window: int
    step: int

    def __post_init__(self):
        object.__setattr__(self, "method", EstimatorId(self.method))
        if int(self.window) < 64:
            raise InvalidArgumentError("window must be >= 64")
        if not 1 <= int(self.step) <= int(self.window):
            raise InvalidArgumentError("step must satisfy 1 <= step <= window")
        object.__setattr__(self, "window", int(self.window))
        object.__setattr__(self, "step", int(self.step))

    def starts(self, total: int) -> list:
        if total < self.window:
            raise InsufficientDataError(
                f"series of length {total} is shorter than window={self.window}"
            )
        return list(range(0, total - self.window + 1, self.step))


@dataclass(frozen=True)
class ConvergenceTrack:
    """(position, estimate-or-None) points plus provenance for serialization."""

    method: EstimatorId
    mode: str  # "prefix" or "window"
    params: dict = field(repr=False)
    points: tuple = ()
    averaged: bool = False
    replicate_count: int | None = None
    counts: tuple | None = None  # survivors per point when averaged

    @property
    def gap_count(self) -> int:
        return sum(1 for _, h in self.points if h is None)

    @property
    def positions(self) -> list:
        return [t for t, _ in self.points]

    @property
    def values(self) -> list:
        return [h for _, h in self.points]


def _try_estimate(method, samples):
    try:
        return estimate(method, samples).h_hat
    except HurstLabError:
        return None


def converge(x, cfg: ConvergenceConfig) -> ConvergenceTrack:
    """Estimates on growing prefixes of one series."""
    arr = as_samples(x)
    pts = [
        (p, _try_estimate(cfg.method, arr[:p])) for p in cfg.prefix_lengths(arr.size)
    ]
    return ConvergenceTrack(
        cfg.method,
        "prefix",
        {"tau0": cfg.tau0, "tau_u": cfg.tau_u},
        tuple(pts),
    )


# Worker-side batch for averaged tracks; installed by keyed_map's initializer
# so the (potentially large) series matrix is shipped once per worker.
_WORKER_BATCH = None


def _install_batch(matrix):
    global _WORKER_BATCH
    _WORKER_BATCH = matrix


def _mean_point(method_value, prefix):
    method = EstimatorId(method_value)
    vals = [_try_estimate(method, row[:prefix]) for row in _WORKER_BATCH]
    kept = [v for v in vals if v is not None]
    mean = float(np.mean(kept)) if kept else None
    return mean, len(kept)


def converge_mean(batch, cfg: ConvergenceConfig, jobs=None) -> ConvergenceTrack:
    """Pointwise mean track across a batch of equal-length series.

    At each prefix the mean runs over the series whose estimate succeeded
    (their count is recorded); a prefix where every series fails is a gap.
    """
    rows = [as_samples(s) for s in batch]
    if not rows:
        raise InvalidArgumentError("batch must not be empty")
    total = rows[0].size
    if any(r.size != total for r in rows):
        raise InvalidArgumentError("all series in a batch must share one length")
    prefixes = cfg.prefix_lengths(total)
    matrix = np.vstack(rows)
    results = keyed_map(
        partial(_mean_point, cfg.method.value),
        prefixes,
        jobs=jobs,
        initializer=_install_batch,
        initargs=(matrix,),
    )
    pts, counts = [], []
    for p in prefixes:
        mean, kept = results[p]
        pts.append((p, mean))
        counts.append(kept)
    return ConvergenceTrack(
        cfg.method,
        "prefix",
        {"tau0": cfg.tau0, "tau_u": cfg.tau_u},
        tuple(pts),
        averaged=True,
        replicate_count=len(rows),
        counts=tuple(counts),
    )


def sliding_window(x, cfg: WindowConfig) -> ConvergenceTrack:
    """Estimates on consecutive (possibly overlapping) fixed-size windows."""
    arr = as_samples(x)
    pts = [
        (t, _try_estimate(cfg.method, arr[t : t + cfg.window]))
        for t in cfg.starts(arr.size)
    ]
    return ConvergenceTrack(
        cfg.method,
        "window",
        {"window": cfg.window, "step": cfg.step},
        tuple(pts),
    )


def track_to_csv(track: ConvergenceTrack) -> str:
    """CSV `t,h_hat`; gaps leave the h_hat field empty."""
    lines = [TRACK_CSV_VERSION, "t,h_hat"]
    for t, h in track.points:
        lines.append(f"{t},{'' if h is None else repr(h)}")
    return "\n".join(lines) + "\n"


def track_to_json(track: ConvergenceTrack) -> str:
    doc = {
        "format": TRACK_JSON_FORMAT,
        "method": track.method.value,
        "mode": track.mode,
        "params": track.params,
        "averaged": track.averaged,
        "replicate_count": track.replicate_count,
        "points": [[t, h] for t, h in track.points],
        "counts": list(track.counts) if track.counts is not None else None,
        "gap_count": track.gap_count,
    }
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"
