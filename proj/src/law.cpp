#include "tailchain/law.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "tailchain/student_t.hpp"

namespace tailchain {

namespace {

// Adaptive Simpson quadrature, absolute tolerance.
double simpson(const std::function<double(double)>& f, double a, double b, double fa,
               double fm, double fb, double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::fabs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return simpson(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) +
           simpson(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 double tol = 1e-13) {
    if (!(a < b)) return 0.0;
    const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return simpson(f, a, b, fa, fm, fb, whole, tol, 48);
}

double normal_pdf(double x, double mean, double sd) {
    const double z = (x - mean) / sd;
    return std::exp(-0.5 * z * z) / (sd * 2.5066282746310005024);
}

constexpr double kTailSds = 14.0; // integration window half-width in sds

} // namespace

DiscreteLaw DiscreteLaw::make(std::vector<double> atoms, std::vector<double> masses,
                              double merge_tol) {
    if (atoms.size() != masses.size())
        throw argument_error("DiscreteLaw: atoms/masses length mismatch");
    if (atoms.empty()) throw argument_error("DiscreteLaw: no atoms");
    std::vector<std::size_t> order(atoms.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return atoms[a] < atoms[b]; });
    DiscreteLaw out;
    for (std::size_t idx : order) {
        if (!std::isfinite(atoms[idx]))
            throw argument_error("DiscreteLaw: atoms must be finite");
        if (masses[idx] < -merge_tol)
            throw argument_error("DiscreteLaw: negative mass");
        const double m = std::max(masses[idx], 0.0);
        if (!out.atoms.empty() && atoms[idx] - out.atoms.back() <= merge_tol) {
            out.masses.back() += m;
        } else {
            out.atoms.push_back(atoms[idx]);
            out.masses.push_back(m);
        }
    }
    // keep atoms with exactly zero mass out of the support
    DiscreteLaw trimmed;
    for (std::size_t i = 0; i < out.atoms.size(); ++i) {
        if (out.masses[i] > 0.0) {
            trimmed.atoms.push_back(out.atoms[i]);
            trimmed.masses.push_back(out.masses[i]);
        }
    }
    if (trimmed.atoms.empty())
        throw argument_error("DiscreteLaw: all masses are zero");
    const double total =
        std::accumulate(trimmed.masses.begin(), trimmed.masses.end(), 0.0);
    if (std::fabs(total - 1.0) > 1e-12)
        throw argument_error("DiscreteLaw: masses must sum to 1");
    return trimmed;
}

double DiscreteLaw::mass_at(double atom, double tol) const {
    for (std::size_t i = 0; i < atoms.size(); ++i)
        if (std::fabs(atoms[i] - atom) <= tol) return masses[i];
    return 0.0;
}

bool is_discrete(const Law& law) { return std::holds_alternative<DiscreteLaw>(law); }

const DiscreteLaw& as_discrete(const Law& law) {
    if (!is_discrete(law))
        throw argument_error("law: discrete law required");
    return std::get<DiscreteLaw>(law);
}

double law_cdf(const Law& law, double x) {
    return std::visit(
        [&](const auto& l) -> double {
            using T = std::decay_t<decltype(l)>;
            if constexpr (std::is_same_v<T, DiscreteLaw>) {
                double c = 0.0;
                for (std::size_t i = 0; i < l.atoms.size(); ++i)
                    if (l.atoms[i] <= x) c += l.masses[i];
                return c;
            } else if constexpr (std::is_same_v<T, NormalLaw>) {
                const double sd = std::sqrt(l.variance);
                if (sd == 0.0) return x >= l.mean ? 1.0 : 0.0;
                return normal_cdf((x - l.mean) / sd);
            } else {
                if (x <= 0.0) return 0.0;
                if (l.log_sd == 0.0) return std::log(x) >= l.log_mean ? 1.0 : 0.0;
                return normal_cdf((std::log(x) - l.log_mean) / l.log_sd);
            }
        },
        law);
}

double law_survival(const Law& law, double x) {
    return std::visit(
        [&](const auto& l) -> double {
            using T = std::decay_t<decltype(l)>;
            if constexpr (std::is_same_v<T, DiscreteLaw>) {
                double c = 0.0;
                for (std::size_t i = 0; i < l.atoms.size(); ++i)
                    if (l.atoms[i] > x) c += l.masses[i];
                return c;
            } else if constexpr (std::is_same_v<T, NormalLaw>) {
                const double sd = std::sqrt(l.variance);
                if (sd == 0.0) return x < l.mean ? 1.0 : 0.0;
                return normal_survival((x - l.mean) / sd);
            } else {
                if (x <= 0.0) return 1.0;
                if (l.log_sd == 0.0) return std::log(x) < l.log_mean ? 1.0 : 0.0;
                return normal_survival((std::log(x) - l.log_mean) / l.log_sd);
            }
        },
        law);
}

double abs_moment(const Law& law, double alpha) {
    if (!(alpha > 0.0)) throw argument_error("abs_moment: alpha must be positive");
    return std::visit(
        [&](const auto& l) -> double {
            using T = std::decay_t<decltype(l)>;
            if constexpr (std::is_same_v<T, DiscreteLaw>) {
                double s = 0.0;
                for (std::size_t i = 0; i < l.atoms.size(); ++i)
                    s += std::pow(std::fabs(l.atoms[i]), alpha) * l.masses[i];
                return s;
            } else if constexpr (std::is_same_v<T, NormalLaw>) {
                const double sd = std::sqrt(l.variance);
                if (sd == 0.0) return std::pow(std::fabs(l.mean), alpha);
                auto f = [&](double x) {
                    return std::pow(std::fabs(x), alpha) * normal_pdf(x, l.mean, sd);
                };
                const double lo = l.mean - kTailSds * sd, hi = l.mean + kTailSds * sd;
                // split at 0 where |x|^alpha has a kink
                if (lo < 0.0 && hi > 0.0)
                    return integrate(f, lo, 0.0) + integrate(f, 0.0, hi);
                return integrate(f, lo, hi);
            } else {
                // E[Z^alpha] for lognormal
                return std::exp(alpha * l.log_mean +
                                0.5 * alpha * alpha * l.log_sd * l.log_sd);
            }
        },
        law);
}

double upper_moment(const Law& law, double s, double x) {
    return std::visit(
        [&](const auto& l) -> double {
            using T = std::decay_t<decltype(l)>;
            if constexpr (std::is_same_v<T, DiscreteLaw>) {
                double acc = 0.0;
                for (std::size_t i = 0; i < l.atoms.size(); ++i) {
                    if (l.atoms[i] > x) {
                        if (l.atoms[i] < 0.0)
                            throw argument_error(
                                "upper_moment: law must have nonnegative support");
                        acc += std::pow(l.atoms[i], s) * l.masses[i];
                    }
                }
                return acc;
            } else if constexpr (std::is_same_v<T, NormalLaw>) {
                const double sd = std::sqrt(l.variance);
                if (sd == 0.0)
                    return l.mean > x ? std::pow(l.mean, s) : 0.0;
                const double lo = std::max(x, 0.0);
                const double hi = l.mean + kTailSds * sd;
                auto f = [&](double z) { return std::pow(z, s) * normal_pdf(z, l.mean, sd); };
                return hi > lo ? integrate(f, lo, hi) : 0.0;
            } else {
                // E[Z^s 1(Z>x)] = e^{s mu + s^2 sig^2/2} Phi((mu + s sig^2 - ln x)/sig)
                const double mu = l.log_mean, sig = l.log_sd;
                const double lead = std::exp(s * mu + 0.5 * s * s * sig * sig);
                if (x <= 0.0) return lead;
                if (sig == 0.0) return std::exp(mu) > x ? lead : 0.0;
                return lead * normal_cdf((mu + s * sig * sig - std::log(x)) / sig);
            }
        },
        law);
}

double sample(const Law& law, Rng& rng) {
    return std::visit(
        [&](const auto& l) -> double {
            using T = std::decay_t<decltype(l)>;
            if constexpr (std::is_same_v<T, DiscreteLaw>) {
                double u = rng.uniform01();
                for (std::size_t i = 0; i < l.atoms.size(); ++i) {
                    if (u < l.masses[i]) return l.atoms[i];
                    u -= l.masses[i];
                }
                return l.atoms.back();
            } else if constexpr (std::is_same_v<T, NormalLaw>) {
                return rng.normal(l.mean, std::sqrt(l.variance));
            } else {
                return std::exp(rng.normal(l.log_mean, l.log_sd));
            }
        },
        law);
}

std::string describe(const Law& law) {
    std::ostringstream os;
    std::visit(
        [&](const auto& l) {
            using T = std::decay_t<decltype(l)>;
            if constexpr (std::is_same_v<T, DiscreteLaw>) {
                os << "discrete(" << l.atoms.size() << " atoms)";
            } else if constexpr (std::is_same_v<T, NormalLaw>) {
                os << "normal(" << l.mean << "," << l.variance << ")";
            } else {
                os << "lognormal(" << l.log_mean << "," << l.log_sd << ")";
            }
        },
        law);
    return os.str();
}

double backward_survival_mass(const TailChainSpec& spec) {
    double m = 0.0;
    if (spec.p > 0.0) m += spec.p * abs_moment(spec.a1_law, spec.alpha);
    if (spec.p < 1.0) m += (1.0 - spec.p) * abs_moment(spec.b1_law, spec.alpha);
    return m;
}

void TailChainSpec::validate(double tol) const {
    if (!(p >= 0.0 && p <= 1.0))
        throw validation_error("TailChainSpec: p must lie in [0,1]");
    if (!(alpha > 0.0))
        throw validation_error("TailChainSpec: alpha must be positive");
    const double mass = backward_survival_mass(*this);
    if (mass > 1.0 + tol)
        throw validation_error(
            "TailChainSpec: p E|A1|^alpha + (1-p) E|B1|^alpha = " +
            std::to_string(mass) + " exceeds 1");
}

bool TailChainSpec::nonnegative() const {
    if (p != 1.0) return false;
    if (!is_discrete(a1_law)) {
        return std::holds_alternative<LognormalLaw>(a1_law);
    }
    const auto& d = as_discrete(a1_law);
    return d.atoms.front() >= 0.0;
}

} // namespace tailchain
