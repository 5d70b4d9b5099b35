"""hurstlab: fractal time-series toolkit.

Exact fractional Gaussian noise synthesis, five classical Hurst-index
estimators, Monte-Carlo accuracy studies over (H, length) grids with
minimum-length tables, convergence and sliding-window analyses, and
packet-trace ingestion.  A CLI (`hurstlab`) and a FastAPI service
(`hurstlab.service`) front the library.
"""

from .core import (
    TimeSeries,
    aggregate,
    exact_autocorrelation,
    sample_autocorrelation,
    summary_stats,
    validate_hurst,
)
from .errors import (
    DegenerateInputError,
    EmbeddingError,
    HurstLabError,
    InsufficientDataError,
    InvalidArgumentError,
    TraceOrderingError,
    TraceParseError,
)
from .estimators import (
    EstimatorId,
    HurstEstimate,
    LogLogFit,
    estimate,
    estimate_aggvar,
    estimate_periodogram,
    estimate_rs,
    estimate_wavelet,
    estimate_whittle,
    fgn_spectral_density,
    fit_weighted_least_squares,
    periodogram,
    whittle_objective,
)
from .synthesis import FgnSpec, autocovariance_vector, circulant_eigenvalues, derive_seed, generate, generate_batch
from .study import (
    QualityClass,
    StudyCell,
    StudyConfig,
    StudyReport,
    classify,
    derive_nmin,
    run_study,
)
from .convergence import (
    ConvergenceConfig,
    ConvergenceTrack,
    WindowConfig,
    converge,
    converge_mean,
    sliding_window,
)
from .ingestion import BinningSpec, BinValue, PacketRecord, bin_trace, parse_trace, serialize_trace
from .seriesio import read_series, write_series

__version__ = "0.1.0"
