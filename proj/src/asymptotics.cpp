#include "tailchain/asymptotics.hpp"

#include <algorithm>
#include <cmath>

namespace tailchain {

namespace {

void require_nonnegative(const TailChainSpec& spec, const char* where) {
    if (!spec.nonnegative())
        throw argument_error(std::string(where) +
                             ": limit formulas implemented for nonnegative chains "
                             "(p = 1, A1 law with nonnegative support)");
}

double survival_a1(const TailChainSpec& spec, double x) {
    return law_survival(spec.a1_law, x);
}

} // namespace

double cov_forward(const std::function<double(double)>& survival_a1, double x,
                   double y) {
    const double fx = survival_a1(x), fy = survival_a1(y);
    return survival_a1(std::max(x, y)) - fx * fy;
}

double var_forward(const std::function<double(double)>& survival, double x) {
    const double fx = survival(x);
    return fx - fx * fx;
}

double cov_forward(const TailChainSpec& spec, double x, double y) {
    require_nonnegative(spec, "cov_forward");
    return cov_forward([&](double v) { return survival_a1(spec, v); }, x, y);
}

double var_forward(const TailChainSpec& spec, double x) {
    return cov_forward(spec, x, x);
}

double cov_backward(const TailChainSpec& spec, double x, double y) {
    require_nonnegative(spec, "cov_backward");
    const double m = std::max(x, y);
    // E[Theta_1^{-alpha} 1(Theta_1 > m)]; exact for discrete laws
    const double lead = upper_moment(spec.a1_law, -spec.alpha, m);
    return lead - survival_a1(spec, x) * survival_a1(spec, y);
}

double var_backward(const TailChainSpec& spec, double x) {
    return cov_backward(spec, x, x);
}

namespace {

struct SeriesTerms {
    // accumulated per-path combined integrand; value = mean, se from variance
    double sum = 0.0;
    double sum_sq = 0.0;
    double tail_hits = 0.0;
};

} // namespace

AsymptoticCov cross_cov_fb(const TailChainSpec& spec, double x, double y,
                           std::size_t K, std::size_t paths, std::uint64_t seed) {
    require_nonnegative(spec, "cross_cov_fb");
    if (K == 0 || paths == 0)
        throw argument_error("cross_cov_fb: K and paths must be >= 1");
    const double fx = survival_a1(spec, x), fy = survival_a1(spec, y);
    Rng rng(seed);
    SeriesTerms acc;
    for (std::size_t pth = 0; pth < paths; ++pth) {
        const double y0 = rng.pareto(spec.alpha);
        double theta = 1.0;
        double theta1 = 0.0;
        double contrib = 0.0;
        for (std::size_t k = 1; k <= K; ++k) {
            const double a = sample(spec.a1_law, rng);
            theta *= a;
            if (k == 1) theta1 = a;
            if (theta == 0.0) break; // absorbed: all later indicators vanish
            const bool yk = y0 * theta > 1.0;
            if (!yk) {
                if (k == K) break;
                continue;
            }
            const double w = a > 0.0 ? std::pow(a, -spec.alpha) : 0.0;
            const bool ind1 = theta1 > x;
            const bool indy = a > y;
            contrib += fx * fy;
            if (indy) contrib -= fx * w;
            if (ind1) contrib -= fy;
            if (ind1 && indy) contrib += w;
            if (k == K) acc.tail_hits += 1.0;
        }
        acc.sum += contrib;
        acc.sum_sq += contrib * contrib;
    }
    const double n = static_cast<double>(paths);
    const double mean = acc.sum / n;
    const double var = std::max(acc.sum_sq / n - mean * mean, 0.0);
    AsymptoticCov out;
    out.kind = AsymptoticCov::Kind::fb;
    out.x = x;
    out.y = y;
    out.value = mean;
    out.truncation_K = K;
    out.mc_paths = paths;
    out.std_error = std::sqrt(var / n);
    out.tail_prob_K = acc.tail_hits / n;
    return out;
}

namespace {

// Exact enumeration: integrate the Pareto factor analytically,
// E[g(Theta) 1(Y_k > 1)] = E[g(Theta) min(1, Theta_k^alpha)].
void enumerate_fb(const DiscreteLaw& law, double alpha, double x, double y,
                  double fx, double fy, std::size_t k, std::size_t K, double theta,
                  double theta1, double prob, double& value, std::size_t& paths,
                  std::size_t path_cap, double& tail_prob) {
    if (theta == 0.0 || k > K) {
        if (++paths > path_cap)
            throw resource_error("cross_cov_fb_exact: path cap exceeded");
        return;
    }
    for (std::size_t j = 0; j < law.atoms.size(); ++j) {
        const double a = law.atoms[j];
        const double pr = prob * law.masses[j];
        const double th = theta * a;
        const double t1 = (k == 1) ? a : theta1;
        if (th > 0.0) {
            const double pyk = std::min(1.0, std::pow(th, alpha));
            const double w = std::pow(a, -alpha);
            double c = fx * fy;
            if (a > y) c -= fx * w;
            if (t1 > x) c -= fy;
            if (t1 > x && a > y) c += w;
            value += pr * c * pyk;
            if (k == K) tail_prob += pr * pyk;
        }
        enumerate_fb(law, alpha, x, y, fx, fy, k + 1, K, th, t1, pr, value, paths,
                     path_cap, tail_prob);
    }
}

} // namespace

AsymptoticCov cross_cov_fb_exact(const TailChainSpec& spec, double x, double y,
                                 std::size_t K, std::size_t path_cap) {
    require_nonnegative(spec, "cross_cov_fb_exact");
    if (!is_discrete(spec.a1_law))
        throw argument_error("cross_cov_fb_exact: discrete increment law required");
    if (K == 0) throw argument_error("cross_cov_fb_exact: K must be >= 1");
    const double fx = survival_a1(spec, x), fy = survival_a1(spec, y);
    double value = 0.0, tail = 0.0;
    std::size_t paths = 0;
    enumerate_fb(as_discrete(spec.a1_law), spec.alpha, x, y, fx, fy, 1, K, 1.0, 0.0,
                 1.0, value, paths, path_cap, tail);
    AsymptoticCov out;
    out.kind = AsymptoticCov::Kind::fb;
    out.x = x;
    out.y = y;
    out.value = value;
    out.truncation_K = K;
    out.mc_paths = 0;
    out.std_error = 0.0;
    out.tail_prob_K = tail;
    return out;
}

double predicted_sd(const TailChainSpec& spec, EstimatorKind estimator, double x,
                    std::size_t n, double v_n) {
    if (!(v_n > 0.0) || n == 0)
        throw argument_error("predicted_sd: need n >= 1 and v_n > 0");
    double var = 0.0;
    switch (estimator) {
        case EstimatorKind::forward: var = var_forward(spec, x); break;
        case EstimatorKind::backward: var = var_backward(spec, x); break;
        default:
            throw argument_error(
                "predicted_sd: closed-form variance available for forward/backward only");
    }
    return std::sqrt(std::max(var, 0.0) / (static_cast<double>(n) * v_n));
}

} // namespace tailchain
