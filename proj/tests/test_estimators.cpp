#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <random>

#include "tailchain/core.hpp"
#include "tailchain/csv.hpp"
#include "tailchain/estimators.hpp"
#include "tailchain/models.hpp"
#include "support.hpp"

using namespace tailchain;

TEST_SUITE_BEGIN("estimators");

namespace {
const std::vector<double> kHandSeries{0.5, 2.0, 1.2, 3.0, 0.3};
const Threshold kU{1.0, std::nullopt};
}

TEST_CASE("default grid") {
    const auto g = default_grid();
    CHECK(g.size() == 203);
    CHECK(g.front() == -3.0);
    CHECK(g.back() == 3.0);
    CHECK(std::count(g.begin(), g.end(), 0.0) == 1);
    CHECK(std::count(g.begin(), g.end(), 1.0) == 1);
    CHECK(std::count(g.begin(), g.end(), -1.0) == 1);
    for (std::size_t j = 1; j < g.size(); ++j) CHECK(g[j] > g[j - 1]);
}

TEST_CASE("forward_cdf hand enumeration") {
    const TimeSeries s(kHandSeries);
    const std::vector<double> grid{0.05, 0.6, 2.0, 3.0};
    const CdfEstimate est = forward_cdf(s, kU, Target::A1, grid);
    CHECK(est.meta.n_exceedances == 3);
    CHECK(est.value_at(0.6) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK(est.value_at(0.05) == 0.0);
    CHECK(est.value_at(3.0) == 1.0); // above the largest observed ratio
}

TEST_CASE("forward_cdf is a proper cdf on the grid") {
    std::mt19937_64 gen(11);
    const TimeSeries s(testsup::random_series(gen, 400));
    const auto grid = default_grid();
    const CdfEstimate est = forward_cdf(s, Threshold{1.5, std::nullopt}, Target::A1, grid);
    for (std::size_t j = 0; j < grid.size(); ++j) {
        CHECK(est.values[j] >= 0.0);
        CHECK(est.values[j] <= 1.0);
        if (j > 0) CHECK(est.values[j] >= est.values[j - 1]);
    }
}

TEST_CASE("forward_cdf no-exceedance errors by sign") {
    const TimeSeries pos({2.0, 3.0, 2.5, 4.0});
    CHECK_NOTHROW(forward_cdf(pos, kU, Target::A1, default_grid()));
    CHECK_THROWS_AS(forward_cdf(pos, kU, Target::B1, default_grid()),
                    no_exceedance_error);
}

TEST_CASE("backward_cdf hand value") {
    const TimeSeries s(kHandSeries);
    const std::vector<double> grid{-1.0, 1.0};
    const CdfEstimate est = backward_cdf(s, kU, 1.0, Target::A1, grid);
    CHECK(est.meta.n_exceedances == 3);
    CHECK(est.value_at(1.0) == doctest::Approx(0.7833333333333333).epsilon(1e-15));
    // no negative-side conditioning points: empty sum
    CHECK(est.value_at(-1.0) == 0.0);
    CHECK_THROWS_AS(backward_cdf(s, kU, 0.0, Target::A1, grid), argument_error);
    CHECK_THROWS_AS(backward_cdf(s, kU, -1.0, Target::A1, grid), argument_error);
}

TEST_CASE("backward_cdf ignores terms with zero predecessor") {
    const TimeSeries s({0.0, 2.0, 3.0, 0.0, 4.0});
    const std::vector<double> grid{0.5};
    const CdfEstimate est = backward_cdf(s, kU, 2.0, Target::A1, grid);
    // i=2: prev=0 skipped; i=3: ratio 1.5 > 0.5 weight (2/3)^2; i=5: prev=0 skipped
    CHECK(est.meta.n_exceedances == 3);
    CHECK(est.value_at(0.5) ==
          doctest::Approx(1.0 - std::pow(2.0 / 3.0, 2.0) / 3.0).epsilon(1e-15));
}

TEST_CASE("forward and backward match the literal transcriptions") {
    std::mt19937_64 gen(5150);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    int checked = 0;
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 4 + static_cast<std::size_t>(unit(gen) * 5.0); // <= 8
        auto x = testsup::random_series(gen, n, true);
        const double u = 0.2 + unit(gen) * 0.8;
        const double alpha = 0.5 + 2.0 * unit(gen);
        const TimeSeries s(x);
        const std::vector<double> grid{-2.5, -1.0, -0.3, 0.0, 0.4, 1.0, 2.2};
        for (bool a_side : {true, false}) {
            const Target tgt = a_side ? Target::A1 : Target::B1;
            bool has = false;
            for (std::size_t i = 0; i + 1 < n; ++i)
                if (a_side ? x[i] > u : x[i] < -u) has = true;
            if (has) {
                const CdfEstimate f = forward_cdf(s, Threshold{u, std::nullopt}, tgt, grid);
                for (double g : grid)
                    CHECK(f.value_at(g) ==
                          doctest::Approx(testsup::forward_ref(x, u, a_side, g))
                              .epsilon(1e-12));
                ++checked;
            }
            bool has_b = false;
            for (std::size_t i = 1; i < n; ++i)
                if (a_side ? x[i] > u : x[i] < -u) has_b = true;
            if (has_b) {
                const CdfEstimate b =
                    backward_cdf(s, Threshold{u, std::nullopt}, alpha, tgt, grid);
                for (double g : grid)
                    CHECK(b.value_at(g) ==
                          doctest::Approx(testsup::backward_ref(x, u, alpha, a_side, g))
                              .epsilon(1e-12));
            }
        }
    }
    CHECK(checked > 50);
}

TEST_CASE("estimates invariant under common positive rescaling") {
    std::mt19937_64 gen(31);
    const auto x = testsup::random_series(gen, 300);
    const TimeSeries s(x);
    const double u = 0.8;
    const auto grid = default_grid();
    const CdfEstimate f1 = forward_cdf(s, Threshold{u, std::nullopt}, Target::A1, grid);
    const CdfEstimate b1 =
        backward_cdf(s, Threshold{u, std::nullopt}, 1.7, Target::A1, grid);
    SUBCASE("power-of-two scaling is exact") {
        std::vector<double> scaled(x);
        for (auto& v : scaled) v *= 2.0;
        const TimeSeries s2(scaled);
        const CdfEstimate f2 =
            forward_cdf(s2, Threshold{2.0 * u, std::nullopt}, Target::A1, grid);
        const CdfEstimate b2 =
            backward_cdf(s2, Threshold{2.0 * u, std::nullopt}, 1.7, Target::A1, grid);
        CHECK(f1.values == f2.values);
        CHECK(b1.values == b2.values);
    }
    SUBCASE("generic scaling within 1e-12") {
        std::vector<double> scaled(x);
        for (auto& v : scaled) v *= 1.37;
        const TimeSeries s2(scaled);
        const CdfEstimate f2 =
            forward_cdf(s2, Threshold{1.37 * u, std::nullopt}, Target::A1, grid);
        const CdfEstimate b2 =
            backward_cdf(s2, Threshold{1.37 * u, std::nullopt}, 1.7, Target::A1, grid);
        for (std::size_t j = 0; j < grid.size(); ++j) {
            CHECK(f2.values[j] == doctest::Approx(f1.values[j]).epsilon(1e-12));
            CHECK(b2.values[j] == doctest::Approx(b1.values[j]).epsilon(1e-12));
        }
    }
}

TEST_CASE("mixture weight and mixture values") {
    CHECK(mixture_weight(0.0) == 1.0);
    CHECK(mixture_weight(0.5) == 0.5);
    CHECK(mixture_weight(1.0) == 0.0);
    CHECK(mixture_weight(-2.3) == 0.0);

    std::mt19937_64 gen(77);
    const TimeSeries s(testsup::random_series(gen, 400));
    const Threshold u{1.2, std::nullopt};
    const std::vector<double> grid{-2.0, -1.5, -1.0, -0.5, 0.0, 0.5, 1.0, 1.5, 2.0};
    const CdfEstimate f = forward_cdf(s, u, Target::A1, grid);
    const CdfEstimate b = backward_cdf(s, u, 2.0, Target::A1, grid);
    const CdfEstimate m = mixture_cdf(f, b);
    CHECK(m.value_at(0.0) == f.value_at(0.0));
    CHECK(m.value_at(1.0) == b.value_at(1.0));
    CHECK(m.value_at(-1.5) == b.value_at(-1.5));
    for (std::size_t j = 0; j < grid.size(); ++j) {
        const double lo = std::min(f.values[j], b.values[j]);
        const double hi = std::max(f.values[j], b.values[j]);
        CHECK(m.values[j] >= lo - 1e-15);
        CHECK(m.values[j] <= hi + 1e-15);
    }
    // equal-weight average at x = 0.5
    const double expect = 0.5 * f.value_at(0.5) + 0.5 * b.value_at(0.5);
    CHECK(m.value_at(0.5) == doctest::Approx(expect).epsilon(1e-15));
}

TEST_CASE("mixture_cdf grid mismatch") {
    const TimeSeries s(kHandSeries);
    const std::vector<double> g1{0.0, 1.0}, g2{0.0, 2.0};
    const CdfEstimate f = forward_cdf(s, kU, Target::A1, g1);
    const CdfEstimate b = backward_cdf(s, kU, 1.0, Target::A1, g2);
    CHECK_THROWS_AS(mixture_cdf(f, b), argument_error);
}

TEST_CASE("monotonize branch rules") {
    CdfEstimate est;
    est.grid = {0.0, 0.5, 1.0, 1.5};
    est.values = {0.1, 0.3, 0.25, 0.4};
    const CdfEstimate out = monotonize(est);
    CHECK(out.values == std::vector<double>{0.1, 0.3, 0.3, 0.4});
    CHECK(out.meta.estimator == EstimatorKind::monotonized_mixture);

    CdfEstimate neg;
    neg.grid = {-3.0, -2.0, -1.0};
    neg.values = {0.05, 0.2, 0.15};
    CHECK(monotonize(neg).values == std::vector<double>{0.05, 0.15, 0.15});

    // idempotence and clamping
    CdfEstimate wild;
    wild.grid = {-1.0, 0.0, 1.0};
    wild.values = {-0.2, 0.4, 1.3};
    const CdfEstimate m1 = monotonize(wild);
    CHECK(m1.values == std::vector<double>{0.0, 0.4, 1.0});
    CHECK(monotonize(m1).values == m1.values);
    CHECK_FALSE(m1.meta.glue_warning);
}

TEST_CASE("monotonize preserves pointwise order") {
    std::mt19937_64 gen(13);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    CdfEstimate a, b;
    a.grid = b.grid = default_grid();
    a.values.resize(a.grid.size());
    b.values.resize(b.grid.size());
    for (std::size_t j = 0; j < a.grid.size(); ++j) {
        a.values[j] = unit(gen);
        b.values[j] = a.values[j] + 0.3 * unit(gen);
    }
    const auto ma = monotonize(a), mb = monotonize(b);
    for (std::size_t j = 0; j < a.grid.size(); ++j)
        CHECK(ma.values[j] <= mb.values[j] + 1e-15);
}

TEST_CASE("monotonize glue warning across zero") {
    CdfEstimate est;
    est.grid = {-1.0, -0.5, 0.0, 0.5};
    est.values = {0.6, 0.7, 0.2, 0.3}; // negative branch ends above nonneg branch
    const CdfEstimate out = monotonize(est);
    CHECK(out.meta.glue_warning);
    CHECK(out.values == std::vector<double>{0.6, 0.7, 0.2, 0.3});
}

TEST_CASE("estimate_reversed is an involution and tags targets") {
    std::mt19937_64 gen(4141);
    const TimeSeries s(testsup::random_series(gen, 200));
    const Threshold u{1.0, std::nullopt};
    const auto grid = default_grid();
    const CdfEstimate rev =
        estimate_reversed(s, u, EstimatorKind::forward, 1.0, Target::A1, grid);
    CHECK(rev.meta.target == Target::A1_rev);
    const CdfEstimate back =
        estimate_reversed(s.reversed(), u, EstimatorKind::forward, 1.0, Target::A1, grid);
    const CdfEstimate plain = forward_cdf(s, u, Target::A1, grid);
    CHECK(back.values == plain.values);
}

TEST_CASE("reversed estimates on an SRE chain: A1_rev and B1_rev agree") {
    // law(A_{-1}) = law(B_{-1}) for stochastic recurrence equations; a mild
    // innovation drift keeps the finite-level conditional laws close to the
    // limit so the comparison is dominated by binomial noise
    SREConfig cfg;
    cfg.c_law = NormalLaw{1.0 / 3.0, 8.0 / 9.0};
    cfg.d_law = NormalLaw{0.0, 1.0};
    cfg.alpha_true = 2.0;
    const TimeSeries s = simulate_sre(cfg, 400000, 909);
    const Threshold u = threshold_from_quantile(s, 0.99);
    const auto grid = default_grid();
    const CdfEstimate a_rev =
        estimate_reversed(s, u, EstimatorKind::forward, 2.0, Target::A1, grid);
    const CdfEstimate b_rev =
        estimate_reversed(s, u, EstimatorKind::forward, 2.0, Target::B1, grid);
    CHECK(a_rev.meta.n_exceedances > 1500);
    CHECK(b_rev.meta.n_exceedances > 1500);
    double max_gap = 0.0;
    for (std::size_t j = 0; j < grid.size(); ++j)
        max_gap = std::max(max_gap, std::fabs(a_rev.values[j] - b_rev.values[j]));
    CHECK(max_gap < 0.06);
}

TEST_CASE("forward estimate converges to the copula-model closed form") {
    TCopulaMarkovConfig cfg;
    const auto grid = default_grid();
    auto sup_error = [&](std::size_t n, std::uint64_t seed) {
        const TimeSeries x = simulate_tcopula_chain(cfg, n, seed);
        const Threshold u = threshold_from_quantile(x, 0.975);
        const CdfEstimate est = forward_cdf(x, u, Target::A1, grid);
        double sup = 0.0;
        for (std::size_t j = 0; j < grid.size(); ++j)
            sup = std::max(sup, std::fabs(est.values[j] -
                                          true_cdf_A1_tcopula(cfg, cfg.nu_margin, 0.5,
                                                              grid[j])));
        return sup;
    };
    const double coarse = sup_error(4000, 15);
    const double fine = sup_error(80000, 16);
    CHECK(fine < coarse);
    CHECK(fine < 0.05);
}

TEST_CASE("time-reversible copula chain: A1 and A1_rev estimates agree") {
    // exchangeable pair copula makes the chain reversible at every level
    TCopulaMarkovConfig cfg;
    const TimeSeries x = simulate_tcopula_chain(cfg, 200000, 405);
    const Threshold u = threshold_from_quantile(x, 0.99);
    const auto grid = default_grid();
    const CdfEstimate fwd = forward_cdf(x, u, Target::A1, grid);
    const CdfEstimate rev =
        estimate_reversed(x, u, EstimatorKind::forward, 2.0, Target::A1, grid);
    double max_gap = 0.0;
    for (std::size_t j = 0; j < grid.size(); ++j)
        max_gap = std::max(max_gap, std::fabs(fwd.values[j] - rev.values[j]));
    CHECK(max_gap <
          3.0 * std::sqrt(0.5 / static_cast<double>(fwd.meta.n_exceedances)));
}

TEST_CASE("cdf csv round trip") {
    const TimeSeries s(kHandSeries);
    const std::vector<double> grid{-1.0, 0.0, 0.6, 2.0};
    CdfEstimate est = mixture_cdf(forward_cdf(s, kU, Target::A1, grid),
                                  backward_cdf(s, kU, 1.25, Target::A1, grid));
    est.meta.alpha_mode = AlphaMode::plugin;
    est.meta.threshold.quantile_used = 0.9;
    const std::string path = "/tmp/tailchain_test_cdf.csv";
    write_cdf_csv(path, est);
    const CdfEstimate back = read_cdf_csv(path);
    CHECK(back.grid == est.grid);
    CHECK(back.values == est.values);
    CHECK(back.meta.estimator == est.meta.estimator);
    CHECK(back.meta.target == est.meta.target);
    CHECK(back.meta.alpha_mode == est.meta.alpha_mode);
    CHECK(back.meta.alpha == est.meta.alpha);
    CHECK(back.meta.threshold.level == est.meta.threshold.level);
    CHECK(*back.meta.threshold.quantile_used == 0.9);
    CHECK(back.meta.n_exceedances == est.meta.n_exceedances);
    std::remove(path.c_str());
}

TEST_SUITE_END();
