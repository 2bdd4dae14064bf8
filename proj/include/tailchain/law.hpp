#ifndef TAILCHAIN_LAW_HPP
#define TAILCHAIN_LAW_HPP

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "tailchain/errors.hpp"
#include "tailchain/rng.hpp"

namespace tailchain {

/// Finite atom/mass law. Atoms are kept sorted and distinct; masses sum
/// to 1 within 1e-12.
struct DiscreteLaw {
    std::vector<double> atoms;
    std::vector<double> masses;

    /// Sorts atoms, merges any closer than tol, drops zero-mass atoms.
    static DiscreteLaw make(std::vector<double> atoms, std::vector<double> masses,
                            double merge_tol = 1e-12);

    double mass_at(double atom, double tol = 1e-12) const;
};

struct NormalLaw {
    double mean = 0.0;
    double variance = 1.0;
};

/// log Z ~ N(log_mean, log_sd^2).
struct LognormalLaw {
    double log_mean = 0.0;
    double log_sd = 1.0;
};

using Law = std::variant<DiscreteLaw, NormalLaw, LognormalLaw>;

bool is_discrete(const Law& law);
const DiscreteLaw& as_discrete(const Law& law);

double law_cdf(const Law& law, double x);
double law_survival(const Law& law, double x);
/// E|Z|^alpha. Exact for discrete and lognormal; quadrature for normal.
double abs_moment(const Law& law, double alpha);
/// E[Z^s 1(Z > x)] for laws with nonnegative support.
double upper_moment(const Law& law, double s, double x);
double sample(const Law& law, Rng& rng);
std::string describe(const Law& law);

/// Ground-truth Markov spectral tail chain: tail balance p, index alpha,
/// and the laws of the sign-dependent forward increments.
struct TailChainSpec {
    double p = 1.0;
    double alpha = 1.0;
    Law a1_law;
    Law b1_law;

    /// Enforces p in [0,1], alpha > 0 and the mass constraint
    /// p E|A1|^alpha + (1-p) E|B1|^alpha <= 1 (the probability that the
    /// backward chain survives one step cannot exceed one).
    void validate(double tol = 1e-9) const;

    bool nonnegative() const;
};

/// p E|A1|^alpha + (1-p) E|B1|^alpha, the total mass the duality sends to
/// nonzero backward states.
double backward_survival_mass(const TailChainSpec& spec);

} // namespace tailchain

#endif
