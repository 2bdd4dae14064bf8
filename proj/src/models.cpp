#include "tailchain/models.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "tailchain/oracle.hpp"
#include "tailchain/student_t.hpp"

namespace tailchain {

void TCopulaMarkovConfig::validate() const {
    if (!(nu_margin > 0.0) || !(nu_copula > 0.0))
        throw argument_error("TCopulaMarkovConfig: degrees of freedom must be positive");
    if (!(rho > -1.0 && rho < 1.0))
        throw argument_error("TCopulaMarkovConfig: |rho| must be < 1");
}

void SREConfig::validate() const {
    if (!(alpha_true > 0.0))
        throw argument_error("SREConfig: alpha_true must be positive");
    // contraction: E log|C| < 0, checked numerically for the supported laws
    const double elog = std::visit(
        [](const auto& l) -> double {
            using T = std::decay_t<decltype(l)>;
            if constexpr (std::is_same_v<T, DiscreteLaw>) {
                double s = 0.0;
                for (std::size_t i = 0; i < l.atoms.size(); ++i) {
                    if (l.atoms[i] == 0.0) return -std::numeric_limits<double>::infinity();
                    s += std::log(std::fabs(l.atoms[i])) * l.masses[i];
                }
                return s;
            } else if constexpr (std::is_same_v<T, NormalLaw>) {
                const double sd = std::sqrt(l.variance);
                if (sd == 0.0) {
                    if (l.mean == 0.0) return -std::numeric_limits<double>::infinity();
                    return std::log(std::fabs(l.mean));
                }
                // E log|Z| on a fine midpoint grid; the integrable log
                // singularity at 0 needs no special care at this accuracy
                double s = 0.0;
                const int m = 20000;
                const double lo = l.mean - 14.0 * sd, hi = l.mean + 14.0 * sd;
                const double h = (hi - lo) / m;
                for (int i = 0; i < m; ++i) {
                    const double x = lo + (i + 0.5) * h;
                    const double z = (x - l.mean) / sd;
                    s += std::log(std::fabs(x)) * std::exp(-0.5 * z * z) /
                         (sd * 2.5066282746310005024) * h;
                }
                return s;
            } else {
                return l.log_mean;
            }
        },
        c_law);
    if (!(elog < 0.0))
        throw validation_error("SREConfig: E log|C| must be negative for stationarity");
}

void EVCopulaModel::validate() const {
    if (family == EVFamily::asymmetric_logistic) {
        if (!(theta >= 1.0))
            throw argument_error("EVCopulaModel: logistic family needs theta >= 1");
    } else {
        if (!(theta > 0.0))
            throw argument_error("EVCopulaModel: negative logistic family needs theta > 0");
    }
    if (!(psi1 > 0.0 && psi1 <= 1.0 && psi2 > 0.0 && psi2 <= 1.0))
        throw argument_error("EVCopulaModel: psi1, psi2 must lie in (0,1]");
}

double pickands(const EVCopulaModel& model, double w) {
    if (!(w >= 0.0 && w <= 1.0))
        throw argument_error("pickands: w must lie in [0,1]");
    const double t = model.theta, p1 = model.psi1, p2 = model.psi2;
    if (model.family == EVFamily::asymmetric_logistic) {
        return (1.0 - p1) * w + (1.0 - p2) * (1.0 - w) +
               std::pow(std::pow(p1 * w, t) + std::pow(p2 * (1.0 - w), t), 1.0 / t);
    }
    if (w == 0.0 || w == 1.0) return 1.0;
    return 1.0 - std::pow(std::pow(p1 * w, -t) + std::pow(p2 * (1.0 - w), -t),
                          -1.0 / t);
}

double pickands_derivative(const EVCopulaModel& model, double w) {
    const double t = model.theta, p1 = model.psi1, p2 = model.psi2;
    if (model.family == EVFamily::asymmetric_logistic) {
        const double s = std::pow(p1 * w, t) + std::pow(p2 * (1.0 - w), t);
        double core = 0.0;
        if (s > 0.0)
            core = std::pow(s, 1.0 / t - 1.0) *
                   (std::pow(p1, t) * std::pow(w, t - 1.0) -
                    std::pow(p2, t) * std::pow(1.0 - w, t - 1.0));
        return (1.0 - p1) - (1.0 - p2) + core;
    }
    // endpoint limits of the negative-logistic derivative
    if (w == 0.0) return -p1;
    if (w == 1.0) return p2;
    const double s = std::pow(p1 * w, -t) + std::pow(p2 * (1.0 - w), -t);
    return std::pow(s, -(1.0 + t) / t) *
           (std::pow(p2, -t) * std::pow(1.0 - w, -t - 1.0) -
            std::pow(p1, -t) * std::pow(w, -t - 1.0));
}

namespace {

// Student-t tail symmetry: map z to the data scale keeping full relative
// precision in both tails (avoids computing 1 - tiny).
double t_margin_from_z(double z, double nu_copula, double nu_margin) {
    if (z >= 0.0)
        return -student_t_quantile(student_t_cdf(-z, nu_copula), nu_margin);
    return student_t_quantile(student_t_cdf(z, nu_copula), nu_margin);
}

} // namespace

TimeSeries simulate_tcopula_chain(const TCopulaMarkovConfig& cfg, std::size_t n,
                                  std::uint64_t seed) {
    cfg.validate();
    if (n == 0) throw argument_error("simulate_tcopula_chain: n must be >= 1");
    Rng rng(seed);
    const double nu = cfg.nu_copula;
    const double rho = cfg.rho;
    double z = student_t_quantile(rng.uniform_open(), nu);
    std::vector<double> out;
    out.reserve(n);
    const std::size_t total = cfg.burn_in + n;
    for (std::size_t t = 0; t < total; ++t) {
        const double w = rng.uniform_open();
        const double scale =
            std::sqrt((1.0 - rho * rho) * (nu + z * z) / (nu + 1.0));
        z = rho * z + scale * student_t_quantile(w, nu + 1.0);
        if (!std::isfinite(z))
            throw numeric_error("simulate_tcopula_chain: quantile inversion failed at step " +
                                std::to_string(t));
        if (t >= cfg.burn_in) {
            const double x = t_margin_from_z(z, nu, cfg.nu_margin);
            if (!std::isfinite(x))
                throw numeric_error("simulate_tcopula_chain: margin inversion failed at step " +
                                    std::to_string(t));
            out.push_back(x);
        }
    }
    return TimeSeries(std::move(out), SeriesKind::raw);
}

TimeSeries simulate_sre(const SREConfig& cfg, std::size_t n, std::uint64_t seed) {
    cfg.validate();
    if (n == 0) throw argument_error("simulate_sre: n must be >= 1");
    Rng rng(seed);
    double x = 0.0;
    std::vector<double> out;
    out.reserve(n);
    const std::size_t total = cfg.burn_in + n;
    constexpr double overflow_guard = 1e300;
    for (std::size_t t = 0; t < total; ++t) {
        const double c = sample(cfg.c_law, rng);
        const double d = sample(cfg.d_law, rng);
        x = c * x + d;
        if (!std::isfinite(x) || std::fabs(x) > overflow_guard)
            throw numeric_error("simulate_sre: recursion diverged at step " +
                                std::to_string(t));
        if (t >= cfg.burn_in) out.push_back(x);
    }
    return TimeSeries(std::move(out), SeriesKind::raw);
}

double true_cdf_A1_tcopula(const TCopulaMarkovConfig& cfg, double alpha, double p,
                           double x) {
    cfg.validate();
    const double nu = cfg.nu_copula;
    const double scale = std::sqrt((nu + 1.0) / (1.0 - cfg.rho * cfg.rho));
    if (x >= 0.0) {
        const double arg = (std::pow(x, alpha / nu) - cfg.rho) * scale;
        return student_t_cdf(arg, nu + 1.0);
    }
    if (!(p > 0.0 && p < 1.0))
        throw argument_error("true_cdf_A1_tcopula: x < 0 branch needs p in (0,1)");
    const double ratio = (1.0 - p) / p * std::pow(std::fabs(x), -alpha);
    const double arg = (-std::pow(ratio, -1.0 / nu) - cfg.rho) * scale;
    return student_t_cdf(arg, nu + 1.0);
}

double true_cdf_A1_evcopula(const EVCopulaModel& model, double alpha, double x) {
    model.validate();
    if (!(alpha > 0.0)) throw argument_error("true_cdf_A1_evcopula: alpha > 0 required");
    if (x < 0.0) return 0.0;
    const double w = 1.0 / (std::pow(x, alpha) + 1.0);
    return pickands(model, w) - w * pickands_derivative(model, w);
}

double true_cdf_A1_evcopula_closed_form(const EVCopulaModel& model, double alpha,
                                        double x) {
    model.validate();
    if (x < 0.0) return 0.0;
    const double t = model.theta, p1 = model.psi1, p2 = model.psi2;
    const double xa = std::pow(x, alpha);
    if (model.family == EVFamily::asymmetric_logistic) {
        if (xa == 0.0) return 1.0 - p2;
        return 1.0 - p2 +
               p2 * std::pow(1.0 + std::pow(p1 / (p2 * xa), t), (1.0 - t) / t);
    }
    return 1.0 - p2 * std::pow(1.0 + std::pow(p2 * xa / p1, t), -(1.0 + t) / t);
}

double copula_corner_value(const std::function<double(double, double)>& partial_u,
                           CopulaCorner corner, double z, double s) {
    if (!(s > 0.0)) throw argument_error("copula_corner_value: s must be positive");
    switch (corner) {
        case CopulaCorner::upper_upper: return partial_u(1.0 - s, 1.0 - s * z);
        case CopulaCorner::upper_lower: return partial_u(1.0 - s, s * z);
        case CopulaCorner::lower_upper: return partial_u(s, 1.0 - s * z);
        case CopulaCorner::lower_lower: return partial_u(s, s * z);
    }
    throw argument_error("copula_corner_value: bad corner");
}

double tcopula_partial_u(double nu, double rho, double u, double v) {
    if (!(u > 0.0 && u < 1.0)) throw argument_error("tcopula_partial_u: u in (0,1)");
    if (v <= 0.0) return 0.0;
    if (v >= 1.0) return 1.0;
    const double zu = student_t_quantile(u, nu);
    const double zv = student_t_quantile(v, nu);
    const double arg = (zv - rho * zu) *
                       std::sqrt((nu + 1.0) / ((nu + zu * zu) * (1.0 - rho * rho)));
    return student_t_cdf(arg, nu + 1.0);
}

double tcopula_cdf(double nu, double rho, double u, double v) {
    if (u <= 0.0 || v <= 0.0) return 0.0;
    if (u >= 1.0) return v;
    if (v >= 1.0) return u;
    // C(u,v) = int_0^u dC/du(s, v) ds via midpoint refinement in z-space
    const double zu = student_t_quantile(u, nu);
    const double zv = student_t_quantile(v, nu);
    const double lo = std::min(zu - 40.0, -60.0);
    const int m = 4000;
    const double h = (zu - lo) / m;
    double acc = 0.0;
    for (int i = 0; i < m; ++i) {
        const double z = lo + (i + 0.5) * h;
        const double arg = (zv - rho * z) *
                           std::sqrt((nu + 1.0) / ((nu + z * z) * (1.0 - rho * rho)));
        acc += student_t_cdf(arg, nu + 1.0) * student_t_pdf(z, nu) * h;
    }
    return acc;
}

TailChainPath simulate_spectral_tail_chain(const TailChainSpec& spec, int horizon,
                                           std::uint64_t seed) {
    spec.validate();
    if (horizon < 0) throw argument_error("simulate_spectral_tail_chain: horizon >= 0");
    std::optional<DiscreteLaw> a_m1, b_m1;
    if (horizon > 0) {
        if (!is_discrete(spec.a1_law) || !is_discrete(spec.b1_law))
            throw validation_error(
                "simulate_spectral_tail_chain: backward increments need discrete laws");
        auto back = backward_from_forward(spec);
        a_m1 = back.a_minus1;
        b_m1 = back.b_minus1;
    }
    Rng rng(seed);
    TailChainPath path;
    path.horizon = horizon;
    path.theta.assign(2 * static_cast<std::size_t>(horizon) + 1, 0.0);
    path.y.assign(path.theta.size(), 0.0);
    const double theta0 = rng.uniform01() < spec.p ? 1.0 : -1.0;
    path.theta[static_cast<std::size_t>(horizon)] = theta0;
    // forward
    double cur = theta0;
    for (int t = 1; t <= horizon; ++t) {
        if (cur > 0.0) cur = cur * sample(spec.a1_law, rng);
        else if (cur < 0.0) cur = cur * sample(spec.b1_law, rng);
        path.theta[static_cast<std::size_t>(horizon + t)] = cur;
    }
    // backward, with the duality-derived increment laws
    cur = theta0;
    for (int t = 1; t <= horizon; ++t) {
        if (cur > 0.0) {
            if (!a_m1) throw validation_error("spectral tail chain: A_{-1} branch undefined");
            cur = cur * sample(Law{*a_m1}, rng);
        } else if (cur < 0.0) {
            if (!b_m1) throw validation_error("spectral tail chain: B_{-1} branch undefined");
            cur = cur * sample(Law{*b_m1}, rng);
        }
        path.theta[static_cast<std::size_t>(horizon - t)] = cur;
    }
    const double y0 = rng.pareto(spec.alpha);
    for (std::size_t i = 0; i < path.theta.size(); ++i) path.y[i] = y0 * path.theta[i];
    return path;
}

std::pair<Law, Law> sre_true_increment_law(const SREConfig& cfg) {
    cfg.validate();
    return {cfg.c_law, cfg.c_law};
}

} // namespace tailchain
