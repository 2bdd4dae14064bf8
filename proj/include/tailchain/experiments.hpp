#ifndef TAILCHAIN_EXPERIMENTS_HPP
#define TAILCHAIN_EXPERIMENTS_HPP

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "tailchain/estimators.hpp"
#include "tailchain/models.hpp"

namespace tailchain {

struct MCStudyConfig {
    std::variant<TCopulaMarkovConfig, SREConfig> model;
    std::size_t n = 2000;
    std::size_t reps = 1000;
    double quantile = 0.975;
    std::vector<double> grid; // default_grid() when empty
    AlphaMode alpha_mode = AlphaMode::rank;
    std::uint64_t master_seed = 0;
    /// Replication r uses derive_seed(master_seed, rep_offset + r), so a run
    /// of R reps equals two consecutive runs of R/2 with offset 0 and R/2.
    std::size_t rep_offset = 0;
    bool keep_replicates = false;
    unsigned threads = 0; // 0: hardware concurrency

    void validate() const;
};

struct SummaryStat {
    double mean = 0.0;
    double bias = 0.0;
    double sd = 0.0;
    double rmse = 0.0;
    std::size_t n_excluded = 0;
};

/// Per-gridpoint bias/SD/RMSE for one estimator (population formulas over
/// the included replications).
struct EstimatorCells {
    std::vector<double> bias;
    std::vector<double> sd;
    std::vector<double> rmse;
    std::vector<double> rmse_ratio_vs_forward;
    std::size_t n_excluded = 0;
};

struct TargetTable {
    std::vector<double> truth;
    EstimatorCells forward;
    EstimatorCells backward;
    EstimatorCells mixture;
};

struct MCStudyResult {
    std::vector<double> grid;
    TargetTable a1;
    TargetTable b1;
    SummaryStat p_hat;
    SummaryStat alpha_hat;
    /// "A1" when estimates target the raw increment law (plugin mode),
    /// "A1_star" for the rank-transformed law.
    std::string truth_tag;

    /// Present only when keep_replicates: excluded cells hold NaN.
    std::vector<double> rep_p_hat;
    std::vector<double> rep_alpha_hat;
    std::vector<std::vector<double>> rep_forward_a1;
    std::vector<std::vector<double>> rep_backward_a1;
};

MCStudyResult run_mc_study(const MCStudyConfig& cfg);

struct CaseStudyResult {
    std::size_t n_obs = 0;       // number of log-returns
    std::size_t n_extremes = 0;
    std::size_t n_pos = 0;
    std::size_t n_neg = 0;
    double alpha_hat = 0.0;
    CdfEstimate a1_star;
    CdfEstimate a1_rev_star;
    CdfEstimate b1_star;
    CdfEstimate b1_rev_star;
};

/// Full pipeline on a date,close price file: log-returns, signed rank
/// transform, raw-scale threshold for counts and the Hill estimate, matched
/// count threshold on the transformed scale, monotonized mixture estimates
/// of A1*, B1* and their time-reversed counterparts (alpha = 1 throughout).
CaseStudyResult run_case_study(const std::string& prices_csv_path, double q,
                               std::span<const double> grid);
CaseStudyResult run_case_study(const std::vector<double>& closes, double q,
                               std::span<const double> grid);

/// Deterministic synthetic price fixture: a t-copula Markov chain mapped to
/// prices via p_t = 100 exp(0.01 sum X). Time reversible at extreme levels.
std::vector<double> make_price_fixture(std::size_t n_prices, std::uint64_t seed);

} // namespace tailchain

#endif
