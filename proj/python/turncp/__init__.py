"""Ordinal-pattern turning rates and self-normalized change-point tests.

The heavy lifting happens in the `_turncp` extension module; this package
re-exports its public surface.
"""

from ._turncp import (
    ConfigurationError,
    DegenerateInput,
    InvalidInput,
    IoError,
    NullQuantileTable,
    TurningRateSeries,
    __version__,
    block_size_from_rule,
    count_patterns,
    cusum_statistic,
    enumerate_patterns,
    farima_coefficients,
    integrate,
    null_quantiles,
    pattern_at_via_matrix,
    pattern_frequencies,
    pattern_matrix,
    pattern_of,
    permutation_entropy,
    plug_in_long_run_variance,
    run_test,
    sample_noise,
    self_normalizer,
    simulate_increments,
    simulate_with_break,
    sn_cusum_statistic,
    spectral_centroid_check,
    turning_rate,
    turning_rate_series,
)

__all__ = [
    "ConfigurationError",
    "DegenerateInput",
    "InvalidInput",
    "IoError",
    "NullQuantileTable",
    "TurningRateSeries",
    "__version__",
    "block_size_from_rule",
    "count_patterns",
    "cusum_statistic",
    "enumerate_patterns",
    "farima_coefficients",
    "integrate",
    "null_quantiles",
    "pattern_at_via_matrix",
    "pattern_frequencies",
    "pattern_matrix",
    "pattern_of",
    "permutation_entropy",
    "plug_in_long_run_variance",
    "run_test",
    "sample_noise",
    "self_normalizer",
    "simulate_increments",
    "simulate_with_break",
    "sn_cusum_statistic",
    "spectral_centroid_check",
    "turning_rate",
    "turning_rate_series",
]
