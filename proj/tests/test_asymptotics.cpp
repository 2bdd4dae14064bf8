#include <doctest.h>

#include <cmath>
#include <random>

#include "tailchain/asymptotics.hpp"
#include "support.hpp"

using namespace tailchain;

TEST_SUITE_BEGIN("asymptotics");

namespace {

TailChainSpec half_atoms_spec() {
    TailChainSpec spec;
    spec.p = 1.0;
    spec.alpha = 1.0;
    spec.a1_law = DiscreteLaw::make({0.5, 1.5}, {0.5, 0.5});
    spec.b1_law = DiscreteLaw::make({1.0}, {1.0});
    return spec;
}

TailChainSpec random_nonneg_spec(std::mt19937_64& gen, int max_atoms = 4) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    TailChainSpec spec;
    spec.p = 1.0;
    spec.alpha = 0.5 + 2.0 * unit(gen);
    for (int guard = 0;; ++guard) {
        std::vector<double> atoms, masses;
        const int k = 1 + static_cast<int>(unit(gen) * max_atoms);
        for (int i = 0; i < k; ++i) {
            atoms.push_back(0.05 + 1.8 * unit(gen));
            masses.push_back(0.05 + unit(gen));
        }
        double total = 0.0;
        for (double m : masses) total += m;
        for (double& m : masses) m /= total;
        DiscreteLaw law = DiscreteLaw::make(atoms, masses, 1e-9);
        double mom = 0.0;
        for (std::size_t i = 0; i < law.atoms.size(); ++i)
            mom += std::pow(law.atoms[i], spec.alpha) * law.masses[i];
        if (mom <= 1.0 || guard > 50) {
            if (mom > 1.0) {
                for (auto& a : law.atoms) a *= std::pow(1.0 / mom, 1.0 / spec.alpha) * 0.99;
            }
            spec.a1_law = law;
            break;
        }
    }
    spec.b1_law = DiscreteLaw::make({1.0}, {1.0});
    spec.validate();
    return spec;
}

} // namespace

TEST_CASE("var_forward endpoints and hand value") {
    auto survival_zero = [](double) { return 0.0; };
    auto survival_one = [](double) { return 1.0; };
    auto survival_half = [](double) { return 0.5; };
    CHECK(var_forward(survival_zero, 1.0) == 0.0);
    CHECK(var_forward(survival_one, 1.0) == 0.0);
    CHECK(var_forward(survival_half, 1.0) == 0.25);

    const TailChainSpec spec = half_atoms_spec();
    CHECK(var_forward(spec, 1.0) == doctest::Approx(0.25).epsilon(1e-15));
    // covariance version uses max(x, y)
    CHECK(cov_forward(spec, 0.4, 1.2) ==
          doctest::Approx(law_survival(spec.a1_law, 1.2) -
                          law_survival(spec.a1_law, 0.4) *
                              law_survival(spec.a1_law, 1.2))
              .epsilon(1e-15));
}

TEST_CASE("var_backward hand value and efficiency gap") {
    const TailChainSpec spec = half_atoms_spec();
    // E[Theta^{-1} 1(Theta > 1)] - Fbar(1)^2 = 0.5/1.5 - 0.25 = 1/12
    CHECK(var_backward(spec, 1.0) == doctest::Approx(1.0 / 12.0).epsilon(1e-14));
    CHECK(var_backward(spec, 1.0) < var_forward(spec, 1.0));
    // above the largest atom both vanish
    CHECK(var_backward(spec, 2.0) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(var_forward(spec, 2.0) == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("backward beats forward at x >= 1 for every nonnegative spec") {
    std::mt19937_64 gen(515);
    int informative = 0;
    for (int trial = 0; trial < 60; ++trial) {
        const TailChainSpec spec = random_nonneg_spec(gen);
        for (double x : {1.0, 1.2, 1.6}) {
            const double fb = law_survival(spec.a1_law, x);
            if (fb <= 0.0) continue;
            ++informative;
            CHECK(var_backward(spec, x) < var_forward(spec, x) + 1e-15);
        }
    }
    CHECK(informative > 30);
}

TEST_CASE("forward covariance matrices are positive semidefinite") {
    std::mt19937_64 gen(99);
    const std::vector<double> grid{0.2, 0.5, 0.9, 1.1, 1.4, 1.9};
    for (int trial = 0; trial < 10; ++trial) {
        const TailChainSpec spec = random_nonneg_spec(gen);
        const std::size_t m = grid.size();
        std::vector<double> M(m * m);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j)
                M[i * m + j] = cov_forward(spec, grid[i], grid[j]);
        // Cholesky of M + 1e-10 I must succeed
        std::vector<double> L(m * m, 0.0);
        bool ok = true;
        for (std::size_t i = 0; i < m && ok; ++i) {
            for (std::size_t j = 0; j <= i && ok; ++j) {
                double s = M[i * m + j] + (i == j ? 1e-10 : 0.0);
                for (std::size_t k = 0; k < j; ++k) s -= L[i * m + k] * L[j * m + k];
                if (i == j) {
                    if (s < 0.0) ok = false;
                    else L[i * m + i] = std::sqrt(s);
                } else {
                    L[i * m + j] = s / L[j * m + j];
                }
            }
        }
        CHECK(ok);
    }
}

TEST_CASE("cross_cov_fb: absorbed chain has zero covariance") {
    TailChainSpec spec;
    spec.p = 1.0;
    spec.alpha = 1.0;
    spec.a1_law = DiscreteLaw::make({0.0}, {1.0});
    spec.b1_law = DiscreteLaw::make({1.0}, {1.0});
    const AsymptoticCov mc = cross_cov_fb(spec, 1.0, 1.0, 10, 20000, 3);
    CHECK(mc.value == 0.0);
    CHECK(mc.tail_prob_K == 0.0);
    const AsymptoticCov ex = cross_cov_fb_exact(spec, 1.0, 1.0, 10);
    CHECK(ex.value == 0.0);
}

TEST_CASE("cross_cov_fb: Monte Carlo agrees with exact enumeration") {
    const TailChainSpec spec = half_atoms_spec();
    for (double x : {0.6, 1.0}) {
        const AsymptoticCov ex = cross_cov_fb_exact(spec, x, x, 12);
        const AsymptoticCov mc = cross_cov_fb(spec, x, x, 12, 400000, 2024);
        CHECK(mc.std_error > 0.0);
        CHECK(std::fabs(mc.value - ex.value) < 4.0 * mc.std_error);
    }
}

TEST_CASE("cross_cov_fb: contracting chain truncates geometrically") {
    TailChainSpec spec;
    spec.p = 1.0;
    spec.alpha = 1.0;
    spec.a1_law = DiscreteLaw::make({0.3, 0.8}, {0.5, 0.5});
    spec.b1_law = DiscreteLaw::make({1.0}, {1.0});
    const AsymptoticCov c50 = cross_cov_fb(spec, 1.0, 1.0, 50, 1000000, 11);
    CHECK(c50.tail_prob_K < 1e-3);
    // doubling the horizon leaves the value unchanged within mc error
    const AsymptoticCov c100 = cross_cov_fb(spec, 1.0, 1.0, 100, 1000000, 11);
    CHECK(std::fabs(c100.value - c50.value) <=
          3.0 * std::sqrt(c100.std_error * c100.std_error +
                          c50.std_error * c50.std_error));
    // exact route matches
    const AsymptoticCov ex = cross_cov_fb_exact(spec, 1.0, 1.0, 18);
    CHECK(std::fabs(c50.value - ex.value) < 4.0 * c50.std_error + 1e-4);
}

TEST_CASE("predicted_sd arithmetic") {
    const TailChainSpec spec = half_atoms_spec();
    // var_forward(1) = 0.25, n v_n = 50
    CHECK(predicted_sd(spec, EstimatorKind::forward, 1.0, 2000, 0.025) ==
          doctest::Approx(std::sqrt(0.25 / 50.0)).epsilon(1e-14));
    CHECK(predicted_sd(spec, EstimatorKind::forward, 2.0, 2000, 0.025) == 0.0);
    CHECK(predicted_sd(spec, EstimatorKind::backward, 1.0, 2000, 0.025) ==
          doctest::Approx(std::sqrt(1.0 / 12.0 / 50.0)).epsilon(1e-13));
    CHECK_THROWS_AS(predicted_sd(spec, EstimatorKind::mixture, 1.0, 100, 0.1),
                    argument_error);
    CHECK_THROWS_AS(predicted_sd(spec, EstimatorKind::forward, 1.0, 0, 0.1),
                    argument_error);
}

TEST_CASE("nonnegative-chain guard") {
    std::mt19937_64 gen(3);
    TailChainSpec mixed = testsup::random_spec(gen, 3);
    mixed.p = 0.4;
    CHECK_THROWS_AS(var_forward(mixed, 1.0), argument_error);
    CHECK_THROWS_AS(cross_cov_fb(mixed, 1.0, 1.0, 5, 100, 1), argument_error);
}

TEST_SUITE_END();
