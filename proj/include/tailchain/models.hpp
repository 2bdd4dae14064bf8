#ifndef TAILCHAIN_MODELS_HPP
#define TAILCHAIN_MODELS_HPP

#include <cstdint>
#include <functional>
#include <utility>

#include "tailchain/law.hpp"
#include "tailchain/types.hpp"

namespace tailchain {

/// Stationary Markov chain with Student-t margin (nu_margin df) and a
/// t-copula (nu_copula, rho) linking consecutive observations. The margin
/// tail index equals nu_margin and the tail balance is 1/2.
struct TCopulaMarkovConfig {
    double nu_margin = 2.0;
    double nu_copula = 2.5;
    double rho = 0.2;
    std::size_t burn_in = 1000;

    void validate() const;
};

/// X_t = C_t X_{t-1} + D_t with iid coefficient pairs; alpha_true is the
/// declared Kesten index (checked via E[C^2] = 1 for the normal case).
struct SREConfig {
    Law c_law;
    Law d_law;
    std::size_t burn_in = 1000;
    double alpha_true = 2.0;

    void validate() const;
};

enum class EVFamily { asymmetric_logistic, asymmetric_negative_logistic };

/// Bivariate extreme-value copula given by a Pickands dependence function.
struct EVCopulaModel {
    EVFamily family = EVFamily::asymmetric_logistic;
    double theta = 2.0;
    double psi1 = 1.0;
    double psi2 = 1.0;

    void validate() const;
};

double pickands(const EVCopulaModel& model, double w);
double pickands_derivative(const EVCopulaModel& model, double w);

TimeSeries simulate_tcopula_chain(const TCopulaMarkovConfig& cfg, std::size_t n,
                                  std::uint64_t seed);
TimeSeries simulate_sre(const SREConfig& cfg, std::size_t n, std::uint64_t seed);

/// Closed-form cdf of A1 for the t-copula Markov chain (nu = nu_copula):
///   x >= 0: t_{nu+1}((x^{alpha/nu} - rho) sqrt((nu+1)/(1-rho^2)))
///   x <  0: t_{nu+1}((-((1-p)/p |x|^{-alpha})^{-1/nu} - rho) sqrt((nu+1)/(1-rho^2)))
double true_cdf_A1_tcopula(const TCopulaMarkovConfig& cfg, double alpha, double p,
                           double x);

/// Cdf of A1 for an extreme-value copula: D(w) - w D'(w) at w = 1/(x^alpha+1)
/// for x >= 0 (0 for x < 0). The family closed forms are available through
/// true_cdf_A1_evcopula_closed_form for cross-checking.
double true_cdf_A1_evcopula(const EVCopulaModel& model, double alpha, double x);
double true_cdf_A1_evcopula_closed_form(const EVCopulaModel& model, double alpha,
                                        double x);

/// Corner parametrizations of dC/du whose s->0 limits are the eta functions
/// linking a Markov copula model to the laws of A1 and B1.
enum class CopulaCorner {
    upper_upper, // (1-s, 1-sz) -> eta_{1,1}(z)
    upper_lower, // (1-s,   sz) -> eta_{1,0}(z)
    lower_upper, // (s,   1-sz) -> eta_{0,1}(z)
    lower_lower  // (s,     sz) -> eta_{0,0}(z)
};

double copula_corner_value(const std::function<double(double, double)>& partial_u,
                           CopulaCorner corner, double z, double s);

/// Closed-form dC/du for the t-copula.
double tcopula_partial_u(double nu, double rho, double u, double v);

/// C(u, v) for the t-copula by integrating the conditional cdf; used as an
/// independent check of the simulated dependence structure.
double tcopula_cdf(double nu, double rho, double u, double v);

/// Two-sided spectral tail chain path on {-horizon..horizon}:
/// theta(0) = +-1, geometric random walk with sign-dependent increments and
/// 0 absorbing; y(t) = |Y0| theta(t) with |Y0| Pareto(alpha).
struct TailChainPath {
    int horizon = 0;
    std::vector<double> theta; // index t stored at theta[t + horizon]
    std::vector<double> y;

    double theta_at(int t) const { return theta[static_cast<std::size_t>(t + horizon)]; }
    double y_at(int t) const { return y[static_cast<std::size_t>(t + horizon)]; }
};

TailChainPath simulate_spectral_tail_chain(const TailChainSpec& spec, int horizon,
                                           std::uint64_t seed);

/// law(A1) = law(B1) = law(C1) for stochastic recurrence equations.
std::pair<Law, Law> sre_true_increment_law(const SREConfig& cfg);

} // namespace tailchain

#endif
