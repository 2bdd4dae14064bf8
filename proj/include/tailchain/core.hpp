#ifndef TAILCHAIN_CORE_HPP
#define TAILCHAIN_CORE_HPP

#include <span>

#include "tailchain/types.hpp"

namespace tailchain {

/// Empirical threshold: the ceil(q*n)-th smallest value of {|X_i|}.
/// With q = 0.975 and n = 2000 this leaves 50 strict exceedances when the
/// sample has no ties at the threshold.
Threshold threshold_from_quantile(const TimeSeries& series, double q);

/// Order-statistic threshold chosen so that exactly k values of |X_i|
/// exceed it (assuming distinct magnitudes). Used to carry an exceedance
/// count from a raw series onto its rank-transformed version.
Threshold matched_count_threshold(const TimeSeries& series, std::size_t k);

/// Tail balance: share of exceedances of |X| that are positive.
TailBalanceEstimate estimate_p(const TimeSeries& series, const Threshold& u);

/// Hill-type estimator of the index of regular variation:
///   alpha_hat = #{|X_i| > u} / sum log(|X_i|/u) over exceedances.
TailIndexEstimate hill_alpha(const TimeSeries& series, const Threshold& u);

/// Signed rank transform X*_i = sign(X_i) * (n+1)/(n+1-R_i) with
/// R_i = #{j : |X_j| <= |X_i|}. Makes the tail index 1; ties share a rank.
TimeSeries rank_transform(const TimeSeries& series);

/// r_i = log(p_{i+1}/p_i); output has length(prices) - 1.
TimeSeries log_returns(std::span<const double> prices);

} // namespace tailchain

#endif
