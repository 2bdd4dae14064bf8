#include "tailchain/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>

namespace tailchain {

namespace {

struct WeightedAtoms {
    std::vector<double> atoms;
    std::vector<double> masses;

    void add(double atom, double mass) {
        if (mass <= 0.0) return;
        atoms.push_back(atom);
        masses.push_back(mass);
    }
};

// One direction of the time-change duality. The law of the dual positive-
// conditioning increment (A_{-1} from (A1,B1), or A1 from (A_{-1},B_{-1}))
// collects atoms 1/a weighted a^alpha from the positive atoms of the same-
// sign law and atoms 1/b weighted ((1-p)/p)(-b)^alpha from the negative
// atoms of the opposite-sign law; the missing mass sits at 0 (absorption).
std::optional<DiscreteLaw> dual_positive_side(const DiscreteLaw* same,
                                              const DiscreteLaw* other, double alpha,
                                              double weight_ratio) {
    if (same == nullptr) return std::nullopt;
    WeightedAtoms acc;
    double total = 0.0;
    for (std::size_t i = 0; i < same->atoms.size(); ++i) {
        const double a = same->atoms[i];
        if (a > 0.0) {
            const double m = std::pow(a, alpha) * same->masses[i];
            acc.add(1.0 / a, m);
            total += m;
        }
    }
    if (weight_ratio > 0.0 && other != nullptr) {
        for (std::size_t i = 0; i < other->atoms.size(); ++i) {
            const double b = other->atoms[i];
            if (b < 0.0) {
                const double m = weight_ratio * std::pow(-b, alpha) * other->masses[i];
                acc.add(1.0 / b, m);
                total += m;
            }
        }
    }
    if (total > 1.0 + 1e-9)
        throw validation_error(
            "duality: derived branch mass " + std::to_string(total) +
            " exceeds 1; the spec is not a realizable tail chain");
    acc.add(0.0, std::max(1.0 - total, 0.0));
    return DiscreteLaw::make(std::move(acc.atoms), std::move(acc.masses));
}

struct DualPair {
    std::optional<DiscreteLaw> pos_side; // conditioning on Theta_0 = +1
    std::optional<DiscreteLaw> neg_side; // conditioning on Theta_0 = -1
};

DualPair dual_laws(const std::optional<DiscreteLaw>& a_law,
                   const std::optional<DiscreteLaw>& b_law, double p, double alpha) {
    if (!(alpha > 0.0)) throw argument_error("duality: alpha must be positive");
    if (!(p >= 0.0 && p <= 1.0)) throw argument_error("duality: p must lie in [0,1]");
    DualPair out;
    const DiscreteLaw* a = a_law ? &*a_law : nullptr;
    const DiscreteLaw* b = b_law ? &*b_law : nullptr;
    if (p > 0.0 && a == nullptr)
        throw validation_error("duality: positive-side law required when p > 0");
    if (p < 1.0 && b == nullptr)
        throw validation_error("duality: negative-side law required when p < 1");
    if (p > 0.0)
        out.pos_side = dual_positive_side(a, b, alpha, p < 1.0 ? (1.0 - p) / p : 0.0);
    if (p < 1.0)
        // mirror roles: B_{-1} collects from B1's positive atoms and A1's
        // negative atoms with factor p/(1-p)
        out.neg_side =
            dual_positive_side(b, a, alpha, p > 0.0 ? p / (1.0 - p) : 0.0);
    return out;
}

double nonzero_abs_power(const DiscreteLaw& law, double alpha, bool positive_part) {
    double s = 0.0;
    for (std::size_t i = 0; i < law.atoms.size(); ++i) {
        const double a = law.atoms[i];
        if (positive_part ? a > 0.0 : a < 0.0)
            s += std::pow(std::fabs(a), alpha) * law.masses[i];
    }
    return s;
}

double nonzero_mass(const DiscreteLaw& law) {
    double s = 0.0;
    for (std::size_t i = 0; i < law.atoms.size(); ++i)
        if (law.atoms[i] != 0.0) s += law.masses[i];
    return s;
}

} // namespace

BackwardLaws backward_from_forward(const TailChainSpec& spec) {
    spec.validate();
    std::optional<DiscreteLaw> a1, b1;
    if (spec.p > 0.0) a1 = as_discrete(spec.a1_law);
    if (spec.p < 1.0) b1 = as_discrete(spec.b1_law);
    DualPair dual = dual_laws(a1, b1, spec.p, spec.alpha);

    BackwardLaws out;
    out.a_minus1 = std::move(dual.pos_side);
    out.b_minus1 = std::move(dual.neg_side);

    // Recover the tail balance from the derived laws:
    //   p * P(A1 != 0) = p E[(A_{-1}^+)^alpha] + (1-p) E[(B_{-1}^-)^alpha].
    double denom = 0.0;
    if (a1) denom = nonzero_mass(*a1);
    double numer = 0.0;
    if (out.a_minus1) numer += spec.p * nonzero_abs_power(*out.a_minus1, spec.alpha, true);
    if (out.b_minus1)
        numer += (1.0 - spec.p) * nonzero_abs_power(*out.b_minus1, spec.alpha, false);
    out.p_check = denom > 0.0 ? numer / denom : spec.p;
    return out;
}

ForwardLaws forward_from_backward(const std::optional<DiscreteLaw>& a_minus1,
                                  const std::optional<DiscreteLaw>& b_minus1,
                                  double p, double alpha) {
    DualPair dual = dual_laws(a_minus1, b_minus1, p, alpha);
    return ForwardLaws{std::move(dual.pos_side), std::move(dual.neg_side)};
}

namespace {

struct Enumerator {
    const DiscreteLaw* a_fwd;
    const DiscreteLaw* b_fwd;
    const DiscreteLaw* a_bwd;
    const DiscreteLaw* b_bwd;
    int lo, hi; // enumerated index window, lo <= 0 <= hi
    std::size_t path_cap;
    std::size_t paths_seen = 0;

    std::vector<double> state;

    template <typename Visit>
    void run(double p, Visit&& visit) {
        state.assign(static_cast<std::size_t>(hi - lo + 1), 0.0);
        if (p > 0.0) start(1.0, p, visit);
        if (p < 1.0) start(-1.0, 1.0 - p, visit);
    }

    double& at(int t) { return state[static_cast<std::size_t>(t - lo)]; }

    template <typename Visit>
    void start(double theta0, double prob, Visit& visit) {
        at(0) = theta0;
        forward_step(1, prob, visit);
    }

    template <typename Visit>
    void forward_step(int t, double prob, Visit& visit) {
        if (t > hi) {
            backward_step(-1, prob, visit);
            return;
        }
        const double cur = at(t - 1);
        if (cur == 0.0) {
            at(t) = 0.0;
            forward_step(t + 1, prob, visit);
            return;
        }
        const DiscreteLaw* law = cur > 0.0 ? a_fwd : b_fwd;
        if (law == nullptr)
            throw validation_error("verify_time_change: required increment branch undefined");
        for (std::size_t k = 0; k < law->atoms.size(); ++k) {
            at(t) = cur * law->atoms[k];
            forward_step(t + 1, prob * law->masses[k], visit);
        }
    }

    template <typename Visit>
    void backward_step(int t, double prob, Visit& visit) {
        if (t < lo) {
            if (++paths_seen > path_cap)
                throw resource_error("verify_time_change: path cap exceeded");
            visit(state, prob);
            return;
        }
        const double cur = at(t + 1);
        if (cur == 0.0) {
            at(t) = 0.0;
            backward_step(t - 1, prob, visit);
            return;
        }
        const DiscreteLaw* law = cur > 0.0 ? a_bwd : b_bwd;
        if (law == nullptr)
            throw validation_error("verify_time_change: required increment branch undefined");
        for (std::size_t k = 0; k < law->atoms.size(); ++k) {
            at(t) = cur * law->atoms[k];
            backward_step(t - 1, prob * law->masses[k], visit);
        }
    }
};

} // namespace

TimeChangePair verify_time_change(const TailChainSpec& spec,
                                  const std::function<double(std::span<const double>)>& f,
                                  int s, int t, int i, int horizon,
                                  std::size_t path_cap) {
    spec.validate();
    if (!(s <= 0 && 0 <= t))
        throw argument_error("verify_time_change: need s <= 0 <= t");
    if (std::max({std::abs(s), std::abs(t), std::abs(s - i), std::abs(t - i),
                  std::abs(i)}) > horizon)
        throw argument_error("verify_time_change: window exceeds horizon");

    const std::size_t width = static_cast<std::size_t>(t - s + 1);
    // probe the contract f(...,y_0 = 0,...) = 0
    {
        std::vector<double> probe(width);
        const double vals[] = {0.7, -1.3, 1.0, 0.4, -0.9, 2.1};
        for (int trial = 0; trial < 3; ++trial) {
            for (std::size_t j = 0; j < width; ++j)
                probe[j] = vals[(j + static_cast<std::size_t>(trial) * 2) % 6];
            probe[static_cast<std::size_t>(-s)] = 0.0;
            if (f(probe) != 0.0)
                throw validation_error(
                    "verify_time_change: f must vanish when y_0 = 0");
        }
    }

    const DiscreteLaw* a1 = spec.p > 0.0 ? &as_discrete(spec.a1_law) : nullptr;
    const DiscreteLaw* b1 = spec.p < 1.0 ? &as_discrete(spec.b1_law) : nullptr;
    BackwardLaws back = backward_from_forward(spec);

    Enumerator en;
    en.a_fwd = a1;
    en.b_fwd = b1;
    en.a_bwd = back.a_minus1 ? &*back.a_minus1 : nullptr;
    en.b_bwd = back.b_minus1 ? &*back.b_minus1 : nullptr;
    // the enumerated window must cover the shifted tuple and the pivot
    en.lo = std::min({0, s, s - i, i});
    en.hi = std::max({0, t, t - i, i});
    en.path_cap = path_cap;

    double lhs = 0.0, rhs = 0.0;
    std::vector<double> args(width);
    en.run(spec.p, [&](const std::vector<double>& st, double prob) {
        auto value = [&](int idx) { return st[static_cast<std::size_t>(idx - en.lo)]; };
        for (int j = s; j <= t; ++j) args[static_cast<std::size_t>(j - s)] = value(j - i);
        lhs += prob * f(args);
        const double ti = value(i);
        if (ti != 0.0) {
            const double inv = 1.0 / std::fabs(ti);
            for (int j = s; j <= t; ++j)
                args[static_cast<std::size_t>(j - s)] = value(j) * inv;
            rhs += prob * f(args) * std::pow(std::fabs(ti), spec.alpha);
        }
    });
    return TimeChangePair{lhs, rhs};
}

TailChainSpec standardize_spec(const TailChainSpec& spec) {
    spec.validate();
    auto star = [&](const Law& law) -> Law {
        const DiscreteLaw& d = as_discrete(law);
        std::vector<double> atoms(d.atoms.size());
        for (std::size_t i = 0; i < d.atoms.size(); ++i) {
            const double a = d.atoms[i];
            const double sign = a > 0.0 ? 1.0 : (a < 0.0 ? -1.0 : 0.0);
            atoms[i] = sign * std::pow(std::fabs(a), spec.alpha);
        }
        return DiscreteLaw::make(std::move(atoms), d.masses);
    };
    TailChainSpec out;
    out.p = spec.p;
    out.alpha = 1.0;
    out.a1_law = star(spec.a1_law);
    out.b1_law = star(spec.b1_law);
    return out;
}

TailSignVerdict check_tailsign(const TailChainSpec& spec, double tol) {
    TailSignVerdict verdict;
    if (!is_discrete(spec.a1_law) || !is_discrete(spec.b1_law)) {
        verdict.status = TailSignVerdict::Status::not_applicable;
        verdict.detail = "increment laws must be discrete";
        return verdict;
    }
    const DiscreteLaw& a = as_discrete(spec.a1_law);
    const DiscreteLaw& b = as_discrete(spec.b1_law);
    // precondition (ii): law(A1) = law(B1)
    bool same = a.atoms.size() == b.atoms.size();
    if (same) {
        for (std::size_t i = 0; i < a.atoms.size(); ++i)
            if (std::fabs(a.atoms[i] - b.atoms[i]) > tol ||
                std::fabs(a.masses[i] - b.masses[i]) > tol)
                same = false;
    }
    if (!same) {
        verdict.status = TailSignVerdict::Status::not_applicable;
        verdict.detail = "law(A1) != law(B1)";
        return verdict;
    }
    // precondition (i): E|A1|^alpha = 1
    const double moment = abs_moment(spec.a1_law, spec.alpha);
    if (std::fabs(moment - 1.0) > tol) {
        verdict.status = TailSignVerdict::Status::not_applicable;
        verdict.detail = "E|A1|^alpha = " + std::to_string(moment) + " != 1";
        return verdict;
    }

    const double mu_minus = nonzero_abs_power(a, spec.alpha, false);
    verdict.constraint_value = (1.0 - 2.0 * spec.p) * mu_minus;
    if (std::fabs(verdict.constraint_value) > tol) {
        verdict.status = TailSignVerdict::Status::fail;
        verdict.detail = "(1-2p) E[(M^-)^alpha] = " +
                         std::to_string(verdict.constraint_value) + " != 0";
        return verdict;
    }

    double gap = 0.0;
    if (spec.p > 0.0 && spec.p < 1.0) {
        try {
            BackwardLaws back = backward_from_forward(spec);
            const DiscreteLaw& am = *back.a_minus1;
            const DiscreteLaw& bm = *back.b_minus1;
            std::vector<double> support(am.atoms);
            support.insert(support.end(), bm.atoms.begin(), bm.atoms.end());
            std::sort(support.begin(), support.end());
            for (double atom : support)
                gap = std::max(gap, std::fabs(am.mass_at(atom) - bm.mass_at(atom)));
        } catch (const validation_error& e) {
            verdict.status = TailSignVerdict::Status::fail;
            verdict.detail = std::string("backward laws are not probability laws: ") +
                             e.what();
            return verdict;
        }
    }
    verdict.backward_law_gap = gap;

    if (gap > 1e-9) {
        verdict.status = TailSignVerdict::Status::fail;
        verdict.detail = "law(A_{-1}) != law(B_{-1}), max mass gap " + std::to_string(gap);
        return verdict;
    }
    verdict.status = TailSignVerdict::Status::pass;
    verdict.detail = "backward increment laws coincide";
    return verdict;
}

} // namespace tailchain
