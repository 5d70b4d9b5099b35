"""Exact fractional Gaussian noise synthesis by circulant embedding.

The generator embeds the length-(N+1) autocovariance vector into a
2N-circulant, takes its (real) eigenvalues via the FFT, weights a
Hermitian-symmetric complex Gaussian vector by sqrt(eigenvalues), and
inverse-transforms.  The first N real components, scaled by 1/sqrt(2N),
are an exact sample path: the output covariance equals the target
autocovariance, not an approximation of it.

Reproducibility contract
------------------------
Random variates come from ``numpy.random.Generator`` backed by the
counter-based Philox bit generator, keyed through ``SeedSequence``.
``standard_normal`` draws 2N variates in one call.  Batch seeds are
derived with :func:`derive_seed`, which nests indices injectively
(``(seed << 32) | index``), so any replicate of any batch can be
regenerated in isolation and generation order never matters.
"""

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .core import TimeSeries, validate_hurst
from .errors import EmbeddingError, InvalidArgumentError

__all__ = [
    "FgnSpec",
    "autocovariance_vector",
    "circulant_eigenvalues",
    "generate",
    "generate_batch",
    "derive_seed",
]

# Negative eigenvalues smaller than this fraction of gamma(0) are rounding
# noise and get clamped to zero; anything more negative is a real failure.
EIGENVALUE_TOLERANCE = 1e-9


@dataclass(frozen=True)
class FgnSpec:
    """Synthesis request: Hurst index, length, marginal variance, seed."""

    hurst: float
    length: int
    variance: float = 1.0
    seed: int = 0

    def __post_init__(self):
        validate_hurst(self.hurst)
        if int(self.length) < 2:
            raise InvalidArgumentError("length must be >= 2")
        if not self.variance > 0.0:
            raise InvalidArgumentError("variance must be > 0")
        if int(self.seed) < 0:
            raise InvalidArgumentError("seed must be a non-negative integer")


def derive_seed(base_seed: int, *indices: int) -> int:
    """Injectively combine a base seed with nested indices.

    Each index occupies its own 32-bit field below the previous level, so
    distinct (base_seed, indices) tuples map to distinct integers.  Python
    integers are unbounded, which SeedSequence accepts directly.
    """
    seed = int(base_seed)
    if seed < 0:
        raise InvalidArgumentError("base seed must be non-negative")
    for ix in indices:
        ix = int(ix)
        if not 0 <= ix < 2**32:
            raise InvalidArgumentError("seed index out of the 32-bit range")
        seed = (seed << 32) | ix
    return seed


def autocovariance_vector(hurst: float, variance: float, max_lag: int) -> np.ndarray:
    """[gamma(0), ..., gamma(max_lag)] with gamma(k) = variance * rho(k)."""
    h = validate_hurst(hurst)
    if not variance > 0.0:
        raise InvalidArgumentError("variance must be > 0")
    n = int(max_lag)
    if n < 0:
        raise InvalidArgumentError("max_lag must be >= 0")
    k = np.arange(0, n + 1, dtype=np.float64)
    e = 2.0 * h
    gamma = 0.5 * ((k + 1.0) ** e - 2.0 * k**e + np.abs(k - 1.0) ** e)
    gamma[0] = 1.0
    return variance * gamma


def circulant_eigenvalues(gamma) -> np.ndarray:
    """Eigenvalues of the 2N circulant embedding of an autocovariance vector.

    ``gamma`` holds lags 0..N.  The first circulant row is
    [g0, g1, ..., g_{N-1}, g_N, g_{N-1}, ..., g1]; its DFT is real.
    Tiny negative values (rounding) are clamped to zero, genuinely negative
    ones raise EmbeddingError.
    """
    g = np.asarray(gamma, dtype=np.float64)
    if g.ndim != 1 or g.size < 2:
        raise InvalidArgumentError("gamma must hold at least lags 0 and 1")
    row = np.concatenate([g, g[-2:0:-1]])
    lam = np.fft.fft(row).real
    tol = EIGENVALUE_TOLERANCE * abs(float(g[0]))
    worst = float(lam.min())
    if worst < -tol:
        raise EmbeddingError(
            f"circulant embedding failed: eigenvalue {worst:.3e} < -{tol:.3e}"
        )
    return np.maximum(lam, 0.0)


@lru_cache(maxsize=16)
def _sqrt_eigenvalues(hurst: float, length: int, variance: float) -> np.ndarray:
    gamma = autocovariance_vector(hurst, variance, length)
    lam = circulant_eigenvalues(gamma)
    out = np.sqrt(lam)
    out.flags.writeable = False
    return out


def _generate_from_rng(spec: FgnSpec, rng: np.random.Generator) -> TimeSeries:
    n = int(spec.length)
    m = 2 * n
    sqrt_lam = _sqrt_eigenvalues(float(spec.hurst), n, float(spec.variance))
    z = rng.standard_normal(m)
    # Hermitian-symmetric spectral vector: draws z[0], z[1] fill the two
    # real bins, pairs (z[2j], z[2j+1]) fill bins j and m-j.
    xi = np.empty(m, dtype=np.complex128)
    xi[0] = z[0]
    xi[n] = z[1]
    half = (z[2::2] + 1j * z[3::2]) / np.sqrt(2.0)
    xi[1:n] = half
    xi[n + 1 :] = np.conj(half[::-1])
    path = np.sqrt(m) * np.fft.ifft(sqrt_lam * xi)
    return TimeSeries(path.real[:n])


def generate(spec: FgnSpec) -> TimeSeries:
    """Exact fGn sample path; a pure function of the spec."""
    rng = np.random.Generator(np.random.Philox(np.random.SeedSequence(int(spec.seed))))
    return _generate_from_rng(spec, rng)


def generate_batch(spec: FgnSpec, count: int, base_seed: int) -> list[TimeSeries]:
    """``count`` independent paths; replicate i uses derive_seed(base_seed, i).

    ``spec.seed`` is ignored here: each replicate's seed comes from the
    injective derivation so cells can be regenerated independently.
    """
    if int(count) < 1:
        raise InvalidArgumentError("count must be >= 1")
    return [
        generate(
            FgnSpec(spec.hurst, spec.length, spec.variance, derive_seed(base_seed, i))
        )
        for i in range(int(count))
    ]
