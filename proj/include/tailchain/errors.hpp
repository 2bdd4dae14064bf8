#ifndef TAILCHAIN_ERRORS_HPP
#define TAILCHAIN_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace tailchain {

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Bad parameter value (out of range, inconsistent grids, ...).
struct argument_error : error {
    using error::error;
};

/// Data cannot support the requested computation (degenerate sample,
/// unparseable file, insufficient observations).
struct data_error : error {
    using error::error;
};

/// Conditioning event is empty: no exceedances of the required sign.
struct no_exceedance_error : data_error {
    using data_error::data_error;
};

/// Floating-point breakdown (overflow, failed quantile inversion).
struct numeric_error : error {
    using error::error;
};

/// A tail-chain specification violates its moment constraints, or a
/// functional violates a stated contract.
struct validation_error : error {
    using error::error;
};

/// Exact enumeration would exceed the configured path cap.
struct resource_error : error {
    using error::error;
};

} // namespace tailchain

#endif
