#ifndef TAILCHAIN_ESTIMATORS_HPP
#define TAILCHAIN_ESTIMATORS_HPP

#include <span>
#include <string>
#include <vector>

#include "tailchain/types.hpp"

namespace tailchain {

enum class EstimatorKind { forward, backward, mixture, monotonized_mixture };
enum class Target { A1, B1, A1_rev, B1_rev };
enum class AlphaMode { known, plugin, rank };

std::string to_string(EstimatorKind k);
std::string to_string(Target t);
std::string to_string(AlphaMode m);
EstimatorKind estimator_kind_from_string(const std::string& s);
Target target_from_string(const std::string& s);
AlphaMode alpha_mode_from_string(const std::string& s);

struct CdfMeta {
    EstimatorKind estimator = EstimatorKind::forward;
    Target target = Target::A1;
    AlphaMode alpha_mode = AlphaMode::known;
    double alpha = 1.0;
    Threshold threshold;
    std::size_t n_exceedances = 0;
    /// Set by monotonize() when the two half-line branches do not glue into
    /// a nondecreasing function across 0 (values are reported unaltered).
    bool glue_warning = false;
};

/// A cdf estimate evaluated pointwise on a strictly increasing grid.
/// Forward estimates are proper empirical cdfs; raw backward and mixture
/// values need not be monotone.
struct CdfEstimate {
    std::vector<double> grid;
    std::vector<double> values;
    CdfMeta meta;

    double value_at(double x) const; // exact grid lookup
};

/// 201 equispaced points on [-3,3] plus {-1, 0, 1}.
std::vector<double> default_grid();

/// Mixture weight lambda(x) = max(1 - |x|, 0).
double mixture_weight(double x);

/// Empirical cdf of X_{i+1}/X_i over conditioning exceedance times
/// (X_i > u for A1, X_i < -u for B1), i = 1..n-1.
CdfEstimate forward_cdf(const TimeSeries& series, const Threshold& u, Target target,
                        std::span<const double> grid);

/// Duality-weighted estimator built from the preceding observation: terms
/// (X_{i-1}/X_i)^alpha over i = 2..n. Both sign branches of the displayed
/// estimator are implemented; the x < 0 branch of the A1 target divides by
/// the positive-exceedance count and symmetrically for B1.
CdfEstimate backward_cdf(const TimeSeries& series, const Threshold& u, double alpha,
                         Target target, std::span<const double> grid);

/// lambda(x) * forward + (1 - lambda(x)) * backward on a shared grid.
CdfEstimate mixture_cdf(const CdfEstimate& forward, const CdfEstimate& backward);

/// Smallest nondecreasing majorant on x >= 0, largest nondecreasing
/// minorant on x < 0, clamped to [0,1]. Sets meta.glue_warning if the two
/// branches fail to be jointly nondecreasing across 0.
CdfEstimate monotonize(const CdfEstimate& est);

/// Runs an estimator on the index-reversed series; the result estimates the
/// law of the backward-in-time increment (targets tagged A1_rev / B1_rev).
CdfEstimate estimate_reversed(const TimeSeries& series, const Threshold& u,
                              EstimatorKind kind, double alpha, Target target,
                              std::span<const double> grid);

} // namespace tailchain

#endif
