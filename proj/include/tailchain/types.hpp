#ifndef TAILCHAIN_TYPES_HPP
#define TAILCHAIN_TYPES_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "tailchain/errors.hpp"

namespace tailchain {

enum class SeriesKind { raw, log_return, rank_transformed };

std::string to_string(SeriesKind k);

/// An ordered sequence of finite real observations. Immutable after
/// construction; all operations on it are pure functions.
class TimeSeries {
public:
    TimeSeries(std::vector<double> values, SeriesKind kind = SeriesKind::raw);

    const std::vector<double>& values() const { return values_; }
    SeriesKind kind() const { return kind_; }
    std::size_t size() const { return values_.size(); }
    double operator[](std::size_t i) const { return values_[i]; }

    TimeSeries reversed() const;

private:
    std::vector<double> values_;
    SeriesKind kind_;
};

/// Exceedance level u > 0, applied to |X_i| with strict inequality
/// throughout. Remembers the quantile it came from when applicable.
struct Threshold {
    double level = 0.0;
    std::optional<double> quantile_used;
};

struct TailIndexEstimate {
    double alpha = 0.0;
    std::size_t n_exceedances = 0;
};

struct TailBalanceEstimate {
    double p = 0.0;
    std::size_t n_pos = 0;
    std::size_t n_neg = 0;
};

} // namespace tailchain

#endif
