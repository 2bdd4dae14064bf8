#ifndef TAILCHAIN_ASYMPTOTICS_HPP
#define TAILCHAIN_ASYMPTOTICS_HPP

#include <cstdint>
#include <functional>

#include "tailchain/estimators.hpp"
#include "tailchain/law.hpp"

namespace tailchain {

/// Limiting covariances of sqrt(n v_n)(estimator - truth) for nonnegative
/// Markov chains. kind ff/bb are closed forms; fb carries truncated series
/// terms estimated by tail-chain Monte Carlo (mc_paths = 0 for exact
/// enumeration).
struct AsymptoticCov {
    enum class Kind { ff, bb, fb };
    Kind kind = Kind::ff;
    double x = 0.0;
    double y = 0.0;
    double value = 0.0;
    std::size_t truncation_K = 1;
    std::size_t mc_paths = 0;
    double std_error = 0.0;  // 0 for exact values
    double tail_prob_K = 0.0; // P(Y_K > 1) truncation diagnostic
};

/// Fbar(max(x,y)) - Fbar(x) Fbar(y) for a survival function of A1.
double cov_forward(const std::function<double(double)>& survival_a1, double x, double y);
double var_forward(const std::function<double(double)>& survival_a1, double x);

double cov_forward(const TailChainSpec& spec, double x, double y);
double var_forward(const TailChainSpec& spec, double x);

/// E[Theta_1^{-alpha} 1(Theta_1 > max(x,y))] - Fbar(x) Fbar(y). The exponent
/// is -alpha in general and reduces to -1 when alpha = 1.
double cov_backward(const TailChainSpec& spec, double x, double y);
double var_backward(const TailChainSpec& spec, double x);

/// Forward-backward cross covariance: four truncated series over lags
/// k = 1..K, estimated with `paths` simulated tail-chain paths.
AsymptoticCov cross_cov_fb(const TailChainSpec& spec, double x, double y,
                           std::size_t K, std::size_t paths, std::uint64_t seed);

/// Exact version for discrete increment laws; enumerates all increment
/// tuples (the Pareto factor integrates to min(1, Theta_k^alpha) weights).
AsymptoticCov cross_cov_fb_exact(const TailChainSpec& spec, double x, double y,
                                 std::size_t K, std::size_t path_cap = 10'000'000);

/// Theory-predicted finite-sample standard deviation
/// sqrt(var(Z)(x) / (n v_n)) for the forward or backward estimator.
double predicted_sd(const TailChainSpec& spec, EstimatorKind estimator, double x,
                    std::size_t n, double v_n);

} // namespace tailchain

#endif
