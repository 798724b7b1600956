"""Spot-price time-series analysis: EMD detrending, heavy-tail fitting,
MFDFA, and superstatistics."""

from ._core import (
    SpotstatNumericalError,
    SpotstatValidationError,
    TimeSeries,
    __version__,
    alpha_stable_pdf,
    autocorrelation,
    banded_analysis,
    decompose,
    detrend,
    fit_mle,
    hurst,
    moments,
    q_gaussian_pdf,
    q_gaussian_sample,
    select_model,
    superstat_pipeline,
    superstat_process,
)

__all__ = [
    "SpotstatNumericalError",
    "SpotstatValidationError",
    "TimeSeries",
    "__version__",
    "alpha_stable_pdf",
    "autocorrelation",
    "banded_analysis",
    "decompose",
    "detrend",
    "fit_mle",
    "hurst",
    "moments",
    "q_gaussian_pdf",
    "q_gaussian_sample",
    "select_model",
    "superstat_pipeline",
    "superstat_process",
]
