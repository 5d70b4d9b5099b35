"""Monte-Carlo accuracy study: bias/sigma/MSE grids and minimum-length table.

For every (H0, length, estimator) cell the harness synthesizes replicate
fGn paths with per-replicate derived seeds, applies the estimators, and
reports BIAS = H0 - mean(estimates), the sample standard deviation, the
mean squared error about H0 (the "rmse" column is its square root), a
failure count (errored plus clamped replicates), and a quality class.

Seeding: cell (h0, n) uses derive_seed(base_seed, round(h0 * 1e6),
log2(n)); replicate i inside the cell appends i.  Any cell can therefore
be regenerated in isolation, and results never depend on scheduling.
"""

import enum
import json
import math
from dataclasses import dataclass
from functools import partial

import numpy as np

from ._parallel import keyed_map
from .core import validate_hurst
from .errors import HurstLabError, InvalidArgumentError
from .estimators import EstimatorId, estimate
from .synthesis import FgnSpec, derive_seed, generate_batch

__all__ = [
    "QualityClass",
    "StudyConfig",
    "StudyCell",
    "StudyReport",
    "classify",
    "derive_nmin",
    "run_study",
    "cell_seed",
    "CELLS_CSV_HEADER",
]

DEFAULT_H_GRID = (0.5, 0.6, 0.7, 0.8, 0.9, 0.99)
DEFAULT_EXPONENTS = tuple(range(6, 17))
ALL_ESTIMATORS = tuple(EstimatorId)

CELLS_CSV_VERSION = "# hurstlab-study-cells v1"
NMIN_CSV_VERSION = "# hurstlab-nmin v1"
REPORT_JSON_FORMAT = "hurstlab-study-report/v1"
CELLS_CSV_HEADER = "h0,n,method,bias,sigma,mse,rmse,failures,quality"


class QualityClass(str, enum.Enum):
    HIGH_PRECISION = "high_precision"
    ACCEPTABLE = "acceptable"
    BIASED = "biased"
    UNCLASSIFIED = "unclassified"

    def __str__(self):
        return self.value


def classify(bias: float, sigma: float) -> QualityClass:
    """Quality class from |bias| and sigma.

    high_precision: |bias| <= 0.03 and sigma <= 0.015;
    acceptable:     otherwise |bias| <= 0.05 and sigma <= 0.02;
    biased:         otherwise |bias| > 0.1;
    unclassified:   the remaining gap.
    """
    if not sigma >= 0.0:
        raise InvalidArgumentError("sigma must be >= 0")
    b = abs(float(bias))
    if b <= 0.03 and sigma <= 0.015:
        return QualityClass.HIGH_PRECISION
    if b <= 0.05 and sigma <= 0.02:
        return QualityClass.ACCEPTABLE
    if b > 0.1:
        return QualityClass.BIASED
    return QualityClass.UNCLASSIFIED


@dataclass(frozen=True)
class StudyConfig:
    h_grid: tuple = DEFAULT_H_GRID
    length_exponents: tuple = DEFAULT_EXPONENTS
    replicates: int = 100
    estimators: tuple = ALL_ESTIMATORS
    base_seed: int = 0

    def __post_init__(self):
        h = tuple(sorted({validate_hurst(v) for v in self.h_grid}))
        if not h:
            raise InvalidArgumentError("h_grid must not be empty")
        exps = tuple(sorted({int(e) for e in self.length_exponents}))
        if not exps:
            raise InvalidArgumentError("length_exponents must not be empty")
        if exps[0] < 6:
            raise InvalidArgumentError("length exponents must be >= 6")
        if int(self.replicates) < 2:
            raise InvalidArgumentError("replicates must be >= 2")
        methods = tuple(
            sorted({EstimatorId(m) for m in self.estimators}, key=lambda m: m.value)
        )
        if not methods:
            raise InvalidArgumentError("estimators must not be empty")
        if int(self.base_seed) < 0:
            raise InvalidArgumentError("base_seed must be non-negative")
        object.__setattr__(self, "h_grid", h)
        object.__setattr__(self, "length_exponents", exps)
        object.__setattr__(self, "replicates", int(self.replicates))
        object.__setattr__(self, "estimators", methods)
        object.__setattr__(self, "base_seed", int(self.base_seed))

    @property
    def lengths(self) -> tuple:
        return tuple(2**e for e in self.length_exponents)

    def to_dict(self) -> dict:
        return {
            "h_grid": list(self.h_grid),
            "length_exponents": list(self.length_exponents),
            "replicates": self.replicates,
            "estimators": [m.value for m in self.estimators],
            "base_seed": self.base_seed,
        }


@dataclass(frozen=True)
class StudyCell:
    h0: float
    n: int
    method: EstimatorId
    bias: float
    sigma: float
    mse: float
    rmse: float
    failures: int
    quality: QualityClass

    def to_dict(self) -> dict:
        return {
            "h0": self.h0,
            "n": self.n,
            "method": self.method.value,
            "bias": self.bias,
            "sigma": self.sigma,
            "mse": self.mse,
            "rmse": self.rmse,
            "failures": self.failures,
            "quality": self.quality.value,
        }


@dataclass(frozen=True)
class StudyReport:
    config: StudyConfig
    cells: tuple
    nmin: dict

    def cells_for(self, method) -> list:
        method = EstimatorId(method)
        return [c for c in self.cells if c.method == method]

    def cell(self, h0: float, n: int, method) -> StudyCell:
        method = EstimatorId(method)
        for c in self.cells:
            if c.method == method and c.n == n and math.isclose(c.h0, h0):
                return c
        raise KeyError((h0, n, method))

    def to_cells_csv(self) -> str:
        lines = [CELLS_CSV_VERSION, CELLS_CSV_HEADER]
        for c in self.cells:
            lines.append(
                f"{c.h0!r},{c.n},{c.method.value},{c.bias!r},{c.sigma!r},"
                f"{c.mse!r},{c.rmse!r},{c.failures},{c.quality.value}"
            )
        return "\n".join(lines) + "\n"

    def to_nmin_csv(self) -> str:
        lines = [NMIN_CSV_VERSION, "method,nmin"]
        for method in self.config.estimators:
            val = self.nmin[method]
            lines.append(f"{method.value},{'none' if val is None else val}")
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        doc = {
            "format": REPORT_JSON_FORMAT,
            "config": self.config.to_dict(),
            "cells": [c.to_dict() for c in self.cells],
            "nmin": {m.value: self.nmin[m] for m in self.config.estimators},
        }
        return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def cell_seed(base_seed: int, h0: float, n: int) -> int:
    """Derived seed for the (h0, n) cell; replicate i appends index i."""
    return derive_seed(base_seed, round(h0 * 1e6), int(math.log2(n)))


def _run_cell(config: StudyConfig, key) -> dict:
    """All estimators on one (h0, n) cell; returns per-method estimate lists."""
    h0, n = key
    batch = generate_batch(
        FgnSpec(h0, n, 1.0, 0), config.replicates, cell_seed(config.base_seed, h0, n)
    )
    out = {}
    for method in config.estimators:
        h_hats, clamped, errors = [], 0, 0
        for series in batch:
            try:
                est = estimate(method, series)
            except HurstLabError:
                errors += 1
                continue
            h_hats.append(est.h_hat)
            clamped += int(est.clamped)
        out[method] = (h_hats, clamped, errors)
    return out


def _make_cell(h0, n, method, h_hats, clamped, errors, replicates) -> StudyCell:
    failures = errors + clamped
    if len(h_hats) >= 2:
        arr = np.asarray(h_hats)
        bias = float(h0 - arr.mean())
        sigma = float(arr.std(ddof=1))
        mse = float(np.mean((arr - h0) ** 2))
        rmse = math.sqrt(mse)
        quality = classify(bias, sigma)
    else:
        bias = sigma = mse = rmse = float("nan")
        quality = QualityClass.UNCLASSIFIED
    if errors * 2 > replicates:
        quality = QualityClass.UNCLASSIFIED
    return StudyCell(h0, n, method, bias, sigma, mse, rmse, failures, quality)


def derive_nmin(cells) -> int | None:
    """Smallest grid length from which quality stays acceptable-or-better.

    The condition must hold for every h0 and for every grid length >= the
    candidate; None when no candidate qualifies.
    """
    cells = list(cells)
    lengths = sorted({c.n for c in cells})
    good = {QualityClass.HIGH_PRECISION, QualityClass.ACCEPTABLE}
    for i, n in enumerate(lengths):
        tail = set(lengths[i:])
        if all(c.quality in good for c in cells if c.n in tail):
            return n
    return None


def run_study(config: StudyConfig, jobs=None) -> StudyReport:
    """Full Monte-Carlo grid; deterministic for a given config at any jobs."""
    keys = [(h0, n) for h0 in config.h_grid for n in config.lengths]
    raw = keyed_map(partial(_run_cell, config), keys, jobs=jobs)
    cells = []
    for h0, n in keys:
        for method in config.estimators:
            h_hats, clamped, errors = raw[(h0, n)][method]
            cells.append(
                _make_cell(h0, n, method, h_hats, clamped, errors, config.replicates)
            )
    cells.sort(key=lambda c: (c.h0, c.n, c.method.value))
    nmin = {m: derive_nmin([c for c in cells if c.method == m]) for m in config.estimators}
    return StudyReport(config, tuple(cells), nmin)
