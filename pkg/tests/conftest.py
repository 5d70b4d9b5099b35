import numpy as np
import pytest

from hurstlab.synthesis import FgnSpec, generate, generate_batch


@pytest.fixture(scope="session")
def fgn_batch_cache():
    """Memoized fGn batches so expensive Monte-Carlo inputs are shared."""
    cache = {}

    def get(hurst, length, count, base_seed):
        key = (hurst, length, count, base_seed)
        if key not in cache:
            cache[key] = generate_batch(
                FgnSpec(hurst, length, 1.0, 0), count, base_seed
            )
        return cache[key]

    return get


def dyadic_fgn(hurst, length, seed, grid_bits=20):
    """fGn rounded onto a dyadic grid: integer shifts and power-of-two scales
    then act exactly in IEEE arithmetic, making invariance checks exact."""
    x = generate(FgnSpec(hurst, length, 1.0, seed)).samples
    scale = float(2**grid_bits)
    return np.round(x * scale) / scale


def lag_autocovariance(x, lag):
    """Unbiased known-zero-mean autocovariance at the given lag.

    E equals gamma(lag) exactly for any H, unlike correlation ratios whose
    random normalizer carries an O(N^(4H-4)) Jensen bias that dominates at
    high H; this is the right oracle for synthesis-exactness checks."""
    arr = np.asarray(x.samples if hasattr(x, "samples") else x)
    return float(np.dot(arr[:-lag], arr[lag:]) / (arr.size - lag))
