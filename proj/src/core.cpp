#include "tailchain/core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace tailchain {

std::string to_string(SeriesKind k) {
    switch (k) {
        case SeriesKind::raw: return "raw";
        case SeriesKind::log_return: return "log_return";
        case SeriesKind::rank_transformed: return "rank_transformed";
    }
    return "raw";
}

TimeSeries::TimeSeries(std::vector<double> values, SeriesKind kind)
    : values_(std::move(values)), kind_(kind) {
    if (values_.empty()) throw argument_error("TimeSeries: empty value sequence");
    for (double v : values_)
        if (!std::isfinite(v))
            throw argument_error("TimeSeries: values must be finite");
}

TimeSeries TimeSeries::reversed() const {
    std::vector<double> rev(values_.rbegin(), values_.rend());
    return TimeSeries(std::move(rev), kind_);
}

Threshold threshold_from_quantile(const TimeSeries& series, double q) {
    if (!(q > 0.0 && q < 1.0))
        throw argument_error("threshold_from_quantile: q must lie in (0,1)");
    const std::size_t n = series.size();
    std::vector<double> mags(n);
    std::transform(series.values().begin(), series.values().end(), mags.begin(),
                   [](double v) { return std::fabs(v); });
    const auto [mn, mx] = std::minmax_element(mags.begin(), mags.end());
    if (*mn == *mx)
        throw data_error("threshold_from_quantile: all |X_i| equal (degenerate sample)");
    std::sort(mags.begin(), mags.end());
    const auto k = static_cast<std::size_t>(std::ceil(q * static_cast<double>(n)));
    const double u = mags[k - 1];
    if (!(u > 0.0))
        throw data_error("threshold_from_quantile: quantile of |X| is zero");
    return Threshold{u, q};
}

Threshold matched_count_threshold(const TimeSeries& series, std::size_t k) {
    const std::size_t n = series.size();
    if (k == 0 || k >= n)
        throw argument_error("matched_count_threshold: need 0 < k < n");
    std::vector<double> mags(n);
    std::transform(series.values().begin(), series.values().end(), mags.begin(),
                   [](double v) { return std::fabs(v); });
    std::sort(mags.begin(), mags.end());
    const double u = mags[n - k - 1];
    if (!(u > 0.0))
        throw data_error("matched_count_threshold: threshold is zero");
    return Threshold{u, std::nullopt};
}

TailBalanceEstimate estimate_p(const TimeSeries& series, const Threshold& u) {
    std::size_t pos = 0, neg = 0;
    for (double v : series.values()) {
        if (v > u.level) ++pos;
        else if (v < -u.level) ++neg;
    }
    if (pos + neg == 0)
        throw no_exceedance_error("estimate_p: no exceedances of |X| above threshold");
    return TailBalanceEstimate{static_cast<double>(pos) / static_cast<double>(pos + neg),
                               pos, neg};
}

TailIndexEstimate hill_alpha(const TimeSeries& series, const Threshold& u) {
    std::size_t k = 0;
    double log_sum = 0.0;
    for (double v : series.values()) {
        const double a = std::fabs(v);
        if (a > u.level) {
            ++k;
            log_sum += std::log(a / u.level);
        }
    }
    if (k == 0)
        throw no_exceedance_error("hill_alpha: no exceedances of |X| above threshold");
    if (log_sum == 0.0)
        throw numeric_error("hill_alpha: sum of log excesses is zero");
    return TailIndexEstimate{static_cast<double>(k) / log_sum, k};
}

TimeSeries rank_transform(const TimeSeries& series) {
    const std::size_t n = series.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return std::fabs(series[a]) < std::fabs(series[b]);
    });
    // Max-rank for ties: R_i = #{j : |X_j| <= |X_i|}.
    std::vector<double> ranks(n);
    std::size_t j = 0;
    while (j < n) {
        std::size_t end = j;
        while (end + 1 < n &&
               std::fabs(series[order[end + 1]]) == std::fabs(series[order[j]]))
            ++end;
        for (std::size_t l = j; l <= end; ++l)
            ranks[order[l]] = static_cast<double>(end + 1);
        j = end + 1;
    }
    std::vector<double> out(n);
    const double np1 = static_cast<double>(n) + 1.0;
    for (std::size_t idx = 0; idx < n; ++idx) {
        const double sign = series[idx] > 0 ? 1.0 : (series[idx] < 0 ? -1.0 : 0.0);
        const double mag = np1 / (np1 - ranks[idx]);
        out[idx] = sign * mag;
    }
    return TimeSeries(std::move(out), SeriesKind::rank_transformed);
}

TimeSeries log_returns(std::span<const double> prices) {
    if (prices.size() < 2)
        throw argument_error("log_returns: need at least two prices");
    std::vector<double> out;
    out.reserve(prices.size() - 1);
    for (std::size_t i = 0; i + 1 < prices.size(); ++i) {
        if (!(prices[i] > 0.0) || !(prices[i + 1] > 0.0))
            throw argument_error("log_returns: prices must be positive");
        out.push_back(std::log(prices[i + 1] / prices[i]));
    }
    return TimeSeries(std::move(out), SeriesKind::log_return);
}

} // namespace tailchain
