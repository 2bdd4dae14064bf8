"""Spectral tail-chain estimation for heavy-tailed Markov time series.

Thin Python facade over the C++ core: simulators for the reference models,
forward/backward/mixture cdf estimators of the tail-chain increments, the
exact time-change duality on discrete laws, and the limit-variance formulas.
"""

from ._tailchain import (  # noqa: F401
    ArgumentError,
    DataError,
    NumericError,
    ValidationError,
    __version__,
    backward_from_forward,
    case_study,
    default_grid,
    estimate_cdf,
    estimate_p,
    forward_from_backward,
    hill_alpha,
    log_returns,
    make_price_fixture,
    mixture_weight,
    rank_transform,
    simulate_sre,
    simulate_tcopula_chain,
    threshold_from_quantile,
    true_cdf_a1_evcopula,
    true_cdf_a1_tcopula,
    var_backward,
    var_forward,
    verify_time_change,
)

__all__ = [
    "ArgumentError",
    "DataError",
    "NumericError",
    "ValidationError",
    "backward_from_forward",
    "case_study",
    "default_grid",
    "estimate_cdf",
    "estimate_p",
    "forward_from_backward",
    "hill_alpha",
    "log_returns",
    "make_price_fixture",
    "mixture_weight",
    "rank_transform",
    "simulate_sre",
    "simulate_tcopula_chain",
    "threshold_from_quantile",
    "true_cdf_a1_evcopula",
    "true_cdf_a1_tcopula",
    "var_backward",
    "var_forward",
    "verify_time_change",
]
