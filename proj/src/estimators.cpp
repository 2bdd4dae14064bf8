#include "tailchain/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace tailchain {

std::string to_string(EstimatorKind k) {
    switch (k) {
        case EstimatorKind::forward: return "forward";
        case EstimatorKind::backward: return "backward";
        case EstimatorKind::mixture: return "mixture";
        case EstimatorKind::monotonized_mixture: return "monotonized_mixture";
    }
    return "forward";
}

std::string to_string(Target t) {
    switch (t) {
        case Target::A1: return "A1";
        case Target::B1: return "B1";
        case Target::A1_rev: return "A1_rev";
        case Target::B1_rev: return "B1_rev";
    }
    return "A1";
}

std::string to_string(AlphaMode m) {
    switch (m) {
        case AlphaMode::known: return "known";
        case AlphaMode::plugin: return "plugin";
        case AlphaMode::rank: return "rank";
    }
    return "known";
}

EstimatorKind estimator_kind_from_string(const std::string& s) {
    if (s == "forward") return EstimatorKind::forward;
    if (s == "backward") return EstimatorKind::backward;
    if (s == "mixture") return EstimatorKind::mixture;
    if (s == "monotonized_mixture" || s == "monotonized-mixture")
        return EstimatorKind::monotonized_mixture;
    throw argument_error("unknown estimator kind: " + s);
}

Target target_from_string(const std::string& s) {
    if (s == "A1") return Target::A1;
    if (s == "B1") return Target::B1;
    if (s == "A1_rev") return Target::A1_rev;
    if (s == "B1_rev") return Target::B1_rev;
    throw argument_error("unknown target: " + s);
}

AlphaMode alpha_mode_from_string(const std::string& s) {
    if (s == "known") return AlphaMode::known;
    if (s == "plugin") return AlphaMode::plugin;
    if (s == "rank") return AlphaMode::rank;
    throw argument_error("unknown alpha mode: " + s);
}

double CdfEstimate::value_at(double x) const {
    auto it = std::lower_bound(grid.begin(), grid.end(), x);
    if (it == grid.end() || *it != x)
        throw argument_error("CdfEstimate::value_at: x is not a grid point");
    return values[static_cast<std::size_t>(it - grid.begin())];
}

std::vector<double> default_grid() {
    std::vector<double> g;
    g.reserve(203);
    for (int k = 0; k <= 200; ++k)
        g.push_back(static_cast<double>(3 * k - 300) / 100.0);
    g.push_back(-1.0);
    g.push_back(1.0);
    std::sort(g.begin(), g.end());
    g.erase(std::unique(g.begin(), g.end()), g.end());
    return g;
}

double mixture_weight(double x) { return std::max(1.0 - std::fabs(x), 0.0); }

namespace {

void check_grid(std::span<const double> grid) {
    if (grid.empty()) throw argument_error("estimator: empty evaluation grid");
    for (std::size_t j = 1; j < grid.size(); ++j)
        if (!(grid[j] > grid[j - 1]))
            throw argument_error("estimator: grid must be strictly increasing");
}

bool is_reverse_target(Target t) { return t == Target::A1_rev || t == Target::B1_rev; }

bool conditions_positive(Target t) { return t == Target::A1 || t == Target::A1_rev; }

} // namespace

CdfEstimate forward_cdf(const TimeSeries& series, const Threshold& u, Target target,
                        std::span<const double> grid) {
    check_grid(grid);
    if (is_reverse_target(target))
        throw argument_error("forward_cdf: use estimate_reversed for *_rev targets");
    if (series.size() < 2) throw argument_error("forward_cdf: need n >= 2");
    const bool pos = conditions_positive(target);
    const auto& x = series.values();
    const std::size_t n = x.size();

    std::vector<double> ratios; // X_{i+1}/X_i at conditioning times, i ascending
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const bool cond = pos ? (x[i] > u.level) : (x[i] < -u.level);
        if (cond) ratios.push_back(x[i + 1] / x[i]);
    }
    if (ratios.empty())
        throw no_exceedance_error(std::string("forward_cdf: no conditioning exceedances (") +
                                  (pos ? "X_i > u" : "X_i < -u") + ")");

    CdfEstimate est;
    est.grid.assign(grid.begin(), grid.end());
    est.values.resize(grid.size());
    const double den = static_cast<double>(ratios.size());
    for (std::size_t j = 0; j < grid.size(); ++j) {
        std::size_t count = 0;
        for (double r : ratios)
            if (r <= grid[j]) ++count;
        est.values[j] = static_cast<double>(count) / den;
    }
    est.meta.estimator = EstimatorKind::forward;
    est.meta.target = target;
    est.meta.alpha_mode = AlphaMode::known;
    est.meta.alpha = std::numeric_limits<double>::quiet_NaN();
    est.meta.threshold = u;
    est.meta.n_exceedances = ratios.size();
    return est;
}

CdfEstimate backward_cdf(const TimeSeries& series, const Threshold& u, double alpha,
                         Target target, std::span<const double> grid) {
    check_grid(grid);
    if (is_reverse_target(target))
        throw argument_error("backward_cdf: use estimate_reversed for *_rev targets");
    if (!(alpha > 0.0)) throw argument_error("backward_cdf: alpha must be positive");
    if (series.size() < 2) throw argument_error("backward_cdf: need n >= 2");
    const bool pos = conditions_positive(target);
    const auto& x = series.values();
    const std::size_t n = x.size();

    // Contributing terms over i = 2..n, kept in index order so per-gridpoint
    // sums are reproducibly left-to-right. prev = X_{i-1}, cur = X_i.
    struct Term {
        double ratio;  // X_i / X_{i-1}
        double weight; // |X_{i-1}/X_i|^alpha
        bool cur_pos;  // X_i > u (else X_i < -u)
    };
    std::vector<Term> terms;
    std::size_t den_count = 0;
    for (std::size_t i = 1; i < n; ++i) {
        const bool cp = x[i] > u.level;
        const bool cn = x[i] < -u.level;
        const bool den_side = pos ? cp : cn;
        if (den_side) ++den_count;
        if (!(cp || cn)) continue;
        if (x[i - 1] == 0.0) continue; // weight 0^alpha: the term vanishes
        terms.push_back(Term{x[i] / x[i - 1],
                             std::pow(std::fabs(x[i - 1] / x[i]), alpha), cp});
    }
    if (den_count == 0)
        throw no_exceedance_error(std::string("backward_cdf: no conditioning exceedances (") +
                                  (pos ? "X_i > u" : "X_i < -u") + ")");

    CdfEstimate est;
    est.grid.assign(grid.begin(), grid.end());
    est.values.resize(grid.size());
    const double den = static_cast<double>(den_count);
    for (std::size_t j = 0; j < grid.size(); ++j) {
        const double xg = grid[j];
        double sum = 0.0;
        if (xg >= 0.0) {
            // survival-side branch: conditioning sign matches the target
            for (const Term& t : terms)
                if ((pos ? t.cur_pos : !t.cur_pos) && t.ratio > xg) sum += t.weight;
            est.values[j] = 1.0 - sum / den;
        } else {
            // negative branch: conditioning on the opposite sign
            for (const Term& t : terms)
                if ((pos ? !t.cur_pos : t.cur_pos) && t.ratio <= xg) sum += t.weight;
            est.values[j] = sum / den;
        }
    }
    est.meta.estimator = EstimatorKind::backward;
    est.meta.target = target;
    est.meta.alpha_mode = AlphaMode::known;
    est.meta.alpha = alpha;
    est.meta.threshold = u;
    est.meta.n_exceedances = den_count;
    return est;
}

CdfEstimate mixture_cdf(const CdfEstimate& forward, const CdfEstimate& backward) {
    if (forward.grid != backward.grid)
        throw argument_error("mixture_cdf: estimates use different grids");
    if (forward.meta.target != backward.meta.target)
        throw argument_error("mixture_cdf: estimates use different targets");
    if (forward.meta.threshold.level != backward.meta.threshold.level)
        throw argument_error("mixture_cdf: estimates use different thresholds");
    CdfEstimate est;
    est.grid = forward.grid;
    est.values.resize(est.grid.size());
    for (std::size_t j = 0; j < est.grid.size(); ++j) {
        const double lam = mixture_weight(est.grid[j]);
        est.values[j] = lam * forward.values[j] + (1.0 - lam) * backward.values[j];
    }
    est.meta = backward.meta;
    est.meta.estimator = EstimatorKind::mixture;
    est.meta.n_exceedances = forward.meta.n_exceedances;
    return est;
}

CdfEstimate monotonize(const CdfEstimate& est) {
    CdfEstimate out = est;
    auto& v = out.values;
    const auto& g = out.grid;
    const std::size_t m = g.size();
    // first nonnegative grid position
    std::size_t split = 0;
    while (split < m && g[split] < 0.0) ++split;
    // x >= 0: running max upward
    double run = -std::numeric_limits<double>::infinity();
    for (std::size_t j = split; j < m; ++j) {
        run = std::max(run, v[j]);
        v[j] = std::clamp(run, 0.0, 1.0);
    }
    // x < 0: running min from the largest negative point downward
    run = std::numeric_limits<double>::infinity();
    for (std::size_t j = split; j-- > 0;) {
        run = std::min(run, v[j]);
        v[j] = std::clamp(run, 0.0, 1.0);
    }
    out.meta.estimator = EstimatorKind::monotonized_mixture;
    out.meta.glue_warning = false;
    if (split > 0 && split < m && v[split - 1] > v[split])
        out.meta.glue_warning = true; // branches do not glue monotonically at 0
    return out;
}

CdfEstimate estimate_reversed(const TimeSeries& series, const Threshold& u,
                              EstimatorKind kind, double alpha, Target target,
                              std::span<const double> grid) {
    const Target base = (target == Target::A1 || target == Target::A1_rev)
                            ? Target::A1
                            : Target::B1;
    const TimeSeries rev = series.reversed();
    CdfEstimate est;
    switch (kind) {
        case EstimatorKind::forward:
            est = forward_cdf(rev, u, base, grid);
            break;
        case EstimatorKind::backward:
            est = backward_cdf(rev, u, alpha, base, grid);
            break;
        case EstimatorKind::mixture:
            est = mixture_cdf(forward_cdf(rev, u, base, grid),
                              backward_cdf(rev, u, alpha, base, grid));
            break;
        case EstimatorKind::monotonized_mixture:
            est = monotonize(mixture_cdf(forward_cdf(rev, u, base, grid),
                                         backward_cdf(rev, u, alpha, base, grid)));
            break;
    }
    est.meta.target = (base == Target::A1) ? Target::A1_rev : Target::B1_rev;
    return est;
}

} // namespace tailchain
