#ifndef TAILCHAIN_STUDENT_T_HPP
#define TAILCHAIN_STUDENT_T_HPP

namespace tailchain {

double student_t_cdf(double x, double nu);
double student_t_quantile(double p, double nu);
double student_t_pdf(double x, double nu);

double normal_cdf(double z);
double normal_survival(double z);

} // namespace tailchain

#endif
