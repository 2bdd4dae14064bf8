#include "tailchain/student_t.hpp"

#include <cmath>

#include <boost/math/distributions/students_t.hpp>

#include "tailchain/errors.hpp"

namespace tailchain {

namespace {
using t_dist = boost::math::students_t_distribution<double>;
}

double student_t_cdf(double x, double nu) {
    if (!(nu > 0.0)) throw argument_error("student_t_cdf: nu must be positive");
    if (std::isnan(x)) throw numeric_error("student_t_cdf: NaN argument");
    if (std::isinf(x)) return x > 0 ? 1.0 : 0.0;
    return boost::math::cdf(t_dist(nu), x);
}

double student_t_quantile(double p, double nu) {
    if (!(nu > 0.0)) throw argument_error("student_t_quantile: nu must be positive");
    if (!(p > 0.0 && p < 1.0))
        throw argument_error("student_t_quantile: p must lie in (0,1)");
    return boost::math::quantile(t_dist(nu), p);
}

double student_t_pdf(double x, double nu) {
    if (!(nu > 0.0)) throw argument_error("student_t_pdf: nu must be positive");
    return boost::math::pdf(t_dist(nu), x);
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / 1.4142135623730950488); }

double normal_survival(double z) { return 0.5 * std::erfc(z / 1.4142135623730950488); }

} // namespace tailchain
