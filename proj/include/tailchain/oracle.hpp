#ifndef TAILCHAIN_ORACLE_HPP
#define TAILCHAIN_ORACLE_HPP

#include <functional>
#include <optional>
#include <span>
#include <string>

#include "tailchain/law.hpp"

namespace tailchain {

/// Laws of the backward increments derived exactly from the forward ones.
/// A branch is empty when its conditioning sign has probability zero
/// (p = 0 for the A side, p = 1 for the B side): the law is then
/// immaterial and none is fabricated.
struct BackwardLaws {
    std::optional<DiscreteLaw> a_minus1;
    std::optional<DiscreteLaw> b_minus1;
    /// Tail balance recovered from the derived laws; equals spec.p up to
    /// floating-point error for any valid spec.
    double p_check = 0.0;
};

/// Exact finite-sum evaluation of the duality
///   P(A_{-1} > x) = E[A_1^alpha 1(1/A_1 > x)]          (x >= 0)
///   P(A_{-1} <= x) = (1-p)/p E[(-B_1)^alpha 1(1/B_1 <= x)]  (x < 0)
/// and symmetrically for B_{-1}; residual mass is placed on the atom 0
/// (zero is absorbing). Requires discrete increment laws.
BackwardLaws backward_from_forward(const TailChainSpec& spec);

struct ForwardLaws {
    std::optional<DiscreteLaw> a1;
    std::optional<DiscreteLaw> b1;
};

/// The same duality applied in the displayed direction: reconstructs the
/// forward laws from backward ones. Composing with backward_from_forward
/// is the identity on valid specs.
ForwardLaws forward_from_backward(const std::optional<DiscreteLaw>& a_minus1,
                                  const std::optional<DiscreteLaw>& b_minus1,
                                  double p, double alpha);

struct TimeChangePair {
    double lhs = 0.0;
    double rhs = 0.0;
};

/// Exact two-sided check of
///   E f(Theta_{s-i},...,Theta_{t-i})
///     = E f(Theta_s/|Theta_i|,...,Theta_t/|Theta_i|) |Theta_i|^alpha 1(Theta_i != 0)
/// by enumerating every path of the discrete tail chain over the window.
/// f receives the tuple (y_s,...,y_t) and must vanish whenever y_0 = 0;
/// this contract is probed before enumeration.
TimeChangePair verify_time_change(const TailChainSpec& spec,
                                  const std::function<double(std::span<const double>)>& f,
                                  int s, int t, int i, int horizon,
                                  std::size_t path_cap = 10'000'000);

/// Maps every increment atom a to sign(a)|a|^alpha and sets alpha to 1;
/// the tail balance is unchanged.
TailChainSpec standardize_spec(const TailChainSpec& spec);

struct TailSignVerdict {
    enum class Status { pass, fail, not_applicable };
    Status status = Status::not_applicable;
    /// (1 - 2p) * E[(M^-)^alpha]; must vanish for a common increment law.
    double constraint_value = 0.0;
    /// Largest mass discrepancy between the derived A_{-1} and B_{-1} laws.
    double backward_law_gap = 0.0;
    std::string detail;
};

/// For specs with law(A1) = law(B1) and E|A1|^alpha = 1: checks that the
/// derived backward increment laws coincide and that mixed-sign increments
/// force p = 1/2.
TailSignVerdict check_tailsign(const TailChainSpec& spec, double tol = 1e-9);

} // namespace tailchain

#endif
