#include "tailchain/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <mutex>
#include <optional>
#include <thread>

#include "tailchain/core.hpp"
#include "tailchain/csv.hpp"

namespace tailchain {

void MCStudyConfig::validate() const {
    if (reps < 2) throw argument_error("MCStudyConfig: reps must be >= 2");
    if (n < 2) throw argument_error("MCStudyConfig: n must be >= 2");
    if (!(quantile > 0.0 && quantile < 1.0))
        throw argument_error("MCStudyConfig: quantile must lie in (0,1)");
    if (!grid.empty())
        for (std::size_t j = 1; j < grid.size(); ++j)
            if (!(grid[j] > grid[j - 1]))
                throw argument_error("MCStudyConfig: grid must be strictly increasing");
    if (alpha_mode == AlphaMode::known)
        throw argument_error("MCStudyConfig: alpha_mode must be plugin or rank");
    std::visit([](const auto& m) { m.validate(); }, model);
}

namespace {

struct ModelTruth {
    double alpha_true = 0.0;
    double p_true = 0.5;
    std::function<double(double)> cdf_a1; // raw-scale law of A1 (= law of B1 here)
};

ModelTruth model_truth(const MCStudyConfig& cfg) {
    ModelTruth out;
    if (std::holds_alternative<TCopulaMarkovConfig>(cfg.model)) {
        const auto& m = std::get<TCopulaMarkovConfig>(cfg.model);
        out.alpha_true = m.nu_margin;
        out.p_true = 0.5;
        out.cdf_a1 = [m, a = out.alpha_true](double x) {
            return true_cdf_A1_tcopula(m, a, 0.5, x);
        };
    } else {
        const auto& m = std::get<SREConfig>(cfg.model);
        out.alpha_true = m.alpha_true;
        const bool neg_c = law_cdf(m.c_law, 0.0) > 0.0;
        out.p_true = neg_c ? 0.5 : 1.0;
        out.cdf_a1 = [law = m.c_law](double x) { return law_cdf(law, x); };
    }
    return out;
}

TimeSeries simulate_model(const MCStudyConfig& cfg, std::uint64_t seed) {
    if (std::holds_alternative<TCopulaMarkovConfig>(cfg.model))
        return simulate_tcopula_chain(std::get<TCopulaMarkovConfig>(cfg.model), cfg.n,
                                      seed);
    return simulate_sre(std::get<SREConfig>(cfg.model), cfg.n, seed);
}

constexpr std::size_t kEstimators = 3; // forward, backward, mixture

struct RepOutput {
    double p_hat = std::numeric_limits<double>::quiet_NaN();
    double alpha_hat = std::numeric_limits<double>::quiet_NaN();
    // [target][estimator] -> grid values; empty when the cell is excluded
    std::vector<double> cells[2][kEstimators];
};

RepOutput run_replication(const MCStudyConfig& cfg, std::span<const double> grid,
                          std::uint64_t seed) {
    RepOutput out;
    const TimeSeries series = simulate_model(cfg, seed);
    const Threshold u = threshold_from_quantile(series, cfg.quantile);

    try {
        out.p_hat = estimate_p(series, u).p;
    } catch (const data_error&) {
    }
    std::optional<double> alpha_hat;
    try {
        alpha_hat = hill_alpha(series, u).alpha;
        out.alpha_hat = *alpha_hat;
    } catch (const error&) {
    }

    const TimeSeries* est_series = &series;
    Threshold est_u = u;
    double alpha_used = 0.0;
    std::optional<TimeSeries> transformed;
    if (cfg.alpha_mode == AlphaMode::rank) {
        transformed = rank_transform(series);
        std::size_t k = 0;
        for (double v : series.values())
            if (std::fabs(v) > u.level) ++k;
        est_u = matched_count_threshold(*transformed, k);
        est_series = &*transformed;
        alpha_used = 1.0;
    } else {
        if (!alpha_hat) return out; // backward/mixture need the plug-in index
        alpha_used = *alpha_hat;
    }

    const Target targets[2] = {Target::A1, Target::B1};
    for (int ti = 0; ti < 2; ++ti) {
        std::optional<CdfEstimate> fwd, bwd;
        try {
            fwd = forward_cdf(*est_series, est_u, targets[ti], grid);
        } catch (const no_exceedance_error&) {
        }
        try {
            bwd = backward_cdf(*est_series, est_u, alpha_used, targets[ti], grid);
        } catch (const no_exceedance_error&) {
        }
        if (fwd) out.cells[ti][0] = fwd->values;
        if (bwd) out.cells[ti][1] = bwd->values;
        if (fwd && bwd) out.cells[ti][2] = mixture_cdf(*fwd, *bwd).values;
    }
    return out;
}

EstimatorCells aggregate_cells(const std::vector<RepOutput>& reps, int target,
                               std::size_t est, std::span<const double> truth) {
    const std::size_t g = truth.size();
    EstimatorCells out;
    out.bias.assign(g, 0.0);
    out.sd.assign(g, 0.0);
    out.rmse.assign(g, 0.0);
    out.rmse_ratio_vs_forward.assign(g, 0.0);
    std::size_t included = 0;
    for (const auto& r : reps)
        if (!r.cells[target][est].empty()) ++included;
    out.n_excluded = reps.size() - included;
    if (included == 0) {
        const double nan = std::numeric_limits<double>::quiet_NaN();
        out.bias.assign(g, nan);
        out.sd.assign(g, nan);
        out.rmse.assign(g, nan);
        return out;
    }
    const double m = static_cast<double>(included);
    for (std::size_t j = 0; j < g; ++j) {
        double mean = 0.0;
        for (const auto& r : reps)
            if (!r.cells[target][est].empty()) mean += r.cells[target][est][j];
        mean /= m;
        double var = 0.0, mse = 0.0;
        for (const auto& r : reps) {
            if (r.cells[target][est].empty()) continue;
            const double v = r.cells[target][est][j];
            var += (v - mean) * (v - mean);
            mse += (v - truth[j]) * (v - truth[j]);
        }
        out.bias[j] = mean - truth[j];
        out.sd[j] = std::sqrt(var / m);
        out.rmse[j] = std::sqrt(mse / m);
    }
    return out;
}

SummaryStat summarize(const std::vector<double>& values, double truth,
                      std::size_t reps) {
    SummaryStat s;
    std::size_t m = 0;
    double mean = 0.0;
    for (double v : values)
        if (!std::isnan(v)) {
            mean += v;
            ++m;
        }
    s.n_excluded = reps - m;
    if (m == 0) return s;
    mean /= static_cast<double>(m);
    double var = 0.0, mse = 0.0;
    for (double v : values) {
        if (std::isnan(v)) continue;
        var += (v - mean) * (v - mean);
        mse += (v - truth) * (v - truth);
    }
    s.mean = mean;
    s.bias = mean - truth;
    s.sd = std::sqrt(var / static_cast<double>(m));
    s.rmse = std::sqrt(mse / static_cast<double>(m));
    return s;
}

} // namespace

MCStudyResult run_mc_study(const MCStudyConfig& cfg) {
    cfg.validate();
    const std::vector<double> grid = cfg.grid.empty() ? default_grid() : cfg.grid;
    const ModelTruth truth = model_truth(cfg);

    const bool starred = cfg.alpha_mode == AlphaMode::rank;
    auto truth_cdf = [&](double x) {
        if (!starred) return truth.cdf_a1(x);
        const double sign = x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0);
        const double back = sign * std::pow(std::fabs(x), 1.0 / truth.alpha_true);
        return truth.cdf_a1(back);
    };
    std::vector<double> truth_vals(grid.size());
    for (std::size_t j = 0; j < grid.size(); ++j) truth_vals[j] = truth_cdf(grid[j]);

    std::vector<RepOutput> reps(cfg.reps);
    unsigned workers = cfg.threads != 0 ? cfg.threads
                                        : std::max(1u, std::thread::hardware_concurrency());
    workers = std::min<unsigned>(workers, static_cast<unsigned>(cfg.reps));
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto work = [&](unsigned w) {
        for (std::size_t r = w; r < cfg.reps; r += workers) {
            try {
                reps[r] = run_replication(cfg, grid,
                                          derive_seed(cfg.master_seed, cfg.rep_offset + r));
            } catch (...) {
                std::lock_guard<std::mutex> lk(error_mutex);
                if (!first_error) first_error = std::current_exception();
                return;
            }
        }
    };
    if (workers <= 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
        for (auto& th : pool) th.join();
    }
    if (first_error) std::rethrow_exception(first_error);

    MCStudyResult result;
    result.grid = grid;
    result.truth_tag = starred ? "A1_star" : "A1";
    result.a1.truth = truth_vals;
    result.b1.truth = truth_vals; // law(B1) = law(A1) for both reference models
    for (int target = 0; target < 2; ++target) {
        TargetTable& table = target == 0 ? result.a1 : result.b1;
        table.forward = aggregate_cells(reps, target, 0, truth_vals);
        table.backward = aggregate_cells(reps, target, 1, truth_vals);
        table.mixture = aggregate_cells(reps, target, 2, truth_vals);
        for (std::size_t j = 0; j < grid.size(); ++j) {
            const double f = table.forward.rmse[j];
            table.forward.rmse_ratio_vs_forward[j] = 1.0;
            table.backward.rmse_ratio_vs_forward[j] = table.backward.rmse[j] / f;
            table.mixture.rmse_ratio_vs_forward[j] = table.mixture.rmse[j] / f;
        }
    }

    std::vector<double> p_hats(cfg.reps), alpha_hats(cfg.reps);
    for (std::size_t r = 0; r < cfg.reps; ++r) {
        p_hats[r] = reps[r].p_hat;
        alpha_hats[r] = reps[r].alpha_hat;
    }
    result.p_hat = summarize(p_hats, truth.p_true, cfg.reps);
    result.alpha_hat = summarize(alpha_hats, truth.alpha_true, cfg.reps);

    if (cfg.keep_replicates) {
        result.rep_p_hat = std::move(p_hats);
        result.rep_alpha_hat = std::move(alpha_hats);
        result.rep_forward_a1.resize(cfg.reps);
        result.rep_backward_a1.resize(cfg.reps);
        for (std::size_t r = 0; r < cfg.reps; ++r) {
            result.rep_forward_a1[r] = reps[r].cells[0][0];
            result.rep_backward_a1[r] = reps[r].cells[0][1];
        }
    }
    return result;
}

CaseStudyResult run_case_study(const std::vector<double>& closes, double q,
                               std::span<const double> grid) {
    if (!(q > 0.0 && q < 1.0))
        throw argument_error("run_case_study: quantile must lie in (0,1)");
    const TimeSeries returns = log_returns(closes);
    const Threshold u_raw = threshold_from_quantile(returns, q);

    CaseStudyResult out;
    out.n_obs = returns.size();
    const TailBalanceEstimate balance = estimate_p(returns, u_raw);
    out.n_pos = balance.n_pos;
    out.n_neg = balance.n_neg;
    out.n_extremes = balance.n_pos + balance.n_neg;
    out.alpha_hat = hill_alpha(returns, u_raw).alpha;
    if (out.n_pos < 10)
        throw data_error("run_case_study: fewer than 10 positive exceedances");
    if (out.n_neg < 10)
        throw data_error("run_case_study: fewer than 10 negative exceedances");

    const TimeSeries starred = rank_transform(returns);
    const Threshold u_star = matched_count_threshold(starred, out.n_extremes);

    auto mono_mixture = [&](Target target, bool reversed) {
        if (!reversed) {
            CdfEstimate fwd = forward_cdf(starred, u_star, target, grid);
            CdfEstimate bwd = backward_cdf(starred, u_star, 1.0, target, grid);
            CdfEstimate mix = mixture_cdf(fwd, bwd);
            mix.meta.alpha_mode = AlphaMode::rank;
            return monotonize(mix);
        }
        CdfEstimate mix = estimate_reversed(starred, u_star,
                                            EstimatorKind::monotonized_mixture, 1.0,
                                            target, grid);
        mix.meta.alpha_mode = AlphaMode::rank;
        return mix;
    };
    out.a1_star = mono_mixture(Target::A1, false);
    out.b1_star = mono_mixture(Target::B1, false);
    out.a1_rev_star = mono_mixture(Target::A1, true);
    out.b1_rev_star = mono_mixture(Target::B1, true);
    return out;
}

CaseStudyResult run_case_study(const std::string& prices_csv_path, double q,
                               std::span<const double> grid) {
    const PriceSeries prices = read_prices_csv(prices_csv_path);
    return run_case_study(prices.close, q, grid);
}

std::vector<double> make_price_fixture(std::size_t n_prices, std::uint64_t seed) {
    if (n_prices < 3) throw argument_error("make_price_fixture: need >= 3 prices");
    TCopulaMarkovConfig cfg;
    const TimeSeries x = simulate_tcopula_chain(cfg, n_prices - 1, seed);
    std::vector<double> prices;
    prices.reserve(n_prices);
    double log_price = std::log(100.0);
    prices.push_back(std::exp(log_price));
    for (double v : x.values()) {
        log_price += 0.01 * v;
        prices.push_back(std::exp(log_price));
    }
    return prices;
}

} // namespace tailchain
