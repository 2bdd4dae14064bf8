#ifndef TAILCHAIN_TESTS_SUPPORT_HPP
#define TAILCHAIN_TESTS_SUPPORT_HPP

#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "tailchain/estimators.hpp"
#include "tailchain/law.hpp"
#include "tailchain/types.hpp"

namespace testsup {

// ---------------------------------------------------------------------------
// Independent Student-t cdf: direct quadrature of the density, no shared code
// with the library implementation.

inline double t_pdf_ref(double x, double nu) {
    const double c = std::lgamma(0.5 * (nu + 1.0)) - std::lgamma(0.5 * nu) -
                     0.5 * std::log(nu * 3.14159265358979323846);
    return std::exp(c - 0.5 * (nu + 1.0) * std::log1p(x * x / nu));
}

inline double simpson_ref(const std::function<double(double)>& f, double a, double b,
                          int n) {
    if (n % 2) ++n;
    const double h = (b - a) / n;
    double s = f(a) + f(b);
    for (int i = 1; i < n; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
    return s * h / 3.0;
}

inline double t_cdf_ref(double x, double nu) {
    if (x < 0.0) return 1.0 - t_cdf_ref(-x, nu);
    // 0.5 + integral of the density over [0, x], capped far tail by power bound
    const double cap = std::min(x, 400.0);
    double acc = 0.5 + simpson_ref([nu](double z) { return t_pdf_ref(z, nu); }, 0.0,
                                   cap, 20000);
    return std::min(acc, 1.0);
}

// ---------------------------------------------------------------------------
// Literal transcriptions of the displayed estimators: plain double loops over
// index pairs, no shared machinery with the library.

inline double forward_ref(const std::vector<double>& x, double u, bool a_side,
                          double at) {
    const std::size_t n = x.size();
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const bool cond = a_side ? x[i] > u : x[i] < -u;
        if (!cond) continue;
        den += 1.0;
        if (x[i + 1] / x[i] <= at) num += 1.0;
    }
    return num / den;
}

inline double backward_ref(const std::vector<double>& x, double u, double alpha,
                           bool a_side, double at) {
    const std::size_t n = x.size();
    double den = 0.0;
    for (std::size_t i = 1; i < n; ++i)
        if (a_side ? x[i] > u : x[i] < -u) den += 1.0;
    if (at >= 0.0) {
        double num = 0.0;
        for (std::size_t i = 1; i < n; ++i) {
            const bool cond = a_side ? x[i] > u : x[i] < -u;
            if (!cond || x[i - 1] == 0.0) continue;
            if (x[i] / x[i - 1] > at)
                num += std::pow(x[i - 1] / x[i], alpha);
        }
        return 1.0 - num / den;
    }
    double num = 0.0;
    for (std::size_t i = 1; i < n; ++i) {
        const bool cond = a_side ? x[i] < -u : x[i] > u;
        if (!cond || x[i - 1] == 0.0) continue;
        if (x[i] / x[i - 1] <= at)
            num += std::pow(-x[i - 1] / x[i], alpha);
    }
    return num / den;
}

// ---------------------------------------------------------------------------
// Random valid tail-chain specs (atoms <= max_atoms). Realizability needs the
// sign-resolved mass constraints
//   p E[(A1+)^a] + (1-p) E[(B1-)^a] <= p,
//   p E[(A1-)^a] + (1-p) E[(B1+)^a] <= 1-p;
// atoms are shrunk toward zero until both hold with margin.

inline tailchain::DiscreteLaw random_law(std::mt19937_64& gen, int max_atoms,
                                         bool allow_negative) {
    std::uniform_int_distribution<int> n_atoms(1, max_atoms);
    std::uniform_real_distribution<double> mag(0.1, 2.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const int k = n_atoms(gen);
    std::vector<double> atoms, masses;
    for (int i = 0; i < k; ++i) {
        double a = mag(gen);
        if (allow_negative && unit(gen) < 0.4) a = -a;
        if (unit(gen) < 0.15) a = 0.0;
        atoms.push_back(a);
        masses.push_back(0.05 + unit(gen));
    }
    double total = 0.0;
    for (double m : masses) total += m;
    for (double& m : masses) m /= total;
    // merge duplicates through the canonical constructor
    return tailchain::DiscreteLaw::make(atoms, masses, 1e-9);
}

inline tailchain::TailChainSpec random_spec(std::mt19937_64& gen, int max_atoms = 4,
                                            bool mixed_signs = true) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    tailchain::TailChainSpec spec;
    spec.p = 0.15 + 0.7 * unit(gen);
    spec.alpha = 0.5 + 2.5 * unit(gen);
    spec.a1_law = random_law(gen, max_atoms, mixed_signs);
    spec.b1_law = random_law(gen, max_atoms, mixed_signs);

    auto part_moment = [&](const tailchain::Law& law, bool positive) {
        const auto& d = tailchain::as_discrete(law);
        double s = 0.0;
        for (std::size_t i = 0; i < d.atoms.size(); ++i) {
            const double a = d.atoms[i];
            if (positive ? a > 0.0 : a < 0.0)
                s += std::pow(std::fabs(a), spec.alpha) * d.masses[i];
        }
        return s;
    };
    auto scale_law = [&](const tailchain::Law& law, double c) {
        const auto& d = tailchain::as_discrete(law);
        std::vector<double> atoms(d.atoms.size());
        for (std::size_t i = 0; i < d.atoms.size(); ++i) atoms[i] = c * d.atoms[i];
        return tailchain::Law{tailchain::DiscreteLaw::make(atoms, d.masses, 1e-15)};
    };
    for (int guard = 0; guard < 200; ++guard) {
        const double pos_mass = spec.p * part_moment(spec.a1_law, true) +
                                (1.0 - spec.p) * part_moment(spec.b1_law, false);
        const double neg_mass = spec.p * part_moment(spec.a1_law, false) +
                                (1.0 - spec.p) * part_moment(spec.b1_law, true);
        if (pos_mass <= 0.95 * spec.p && neg_mass <= 0.95 * (1.0 - spec.p)) break;
        spec.a1_law = scale_law(spec.a1_law, 0.8);
        spec.b1_law = scale_law(spec.b1_law, 0.8);
    }
    spec.validate();
    return spec;
}

inline std::vector<double> random_series(std::mt19937_64& gen, std::size_t n,
                                         bool with_zero = false) {
    std::uniform_real_distribution<double> val(-3.0, 3.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<double> x(n);
    for (auto& v : x) {
        v = val(gen);
        if (with_zero && unit(gen) < 0.1) v = 0.0;
    }
    return x;
}

} // namespace testsup

#endif
