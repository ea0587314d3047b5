#ifndef HAMSELECT_SPECIAL_HPP
#define HAMSELECT_SPECIAL_HPP

#include <cmath>
#include <limits>
#include <span>

namespace hamselect {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// log(exp(a) + exp(b)) with a running-maximum shift; -inf operands are inert.
inline double log_sum_exp(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  return a > b ? a + std::log1p(std::exp(b - a)) : b + std::log1p(std::exp(a - b));
}

double log_sum_exp(std::span<const double> xs);

// Standard normal CDF, accurate to well below 1e-12 in absolute error.
inline double normal_cdf(double x) { return 0.5 * std::erfc(-x * 0.7071067811865475244); }

// Regularized incomplete gamma functions P(a,x) and Q(a,x) = 1 - P(a,x),
// series for x < a+1, continued fraction otherwise.
double reg_lower_gamma(double a, double x);
double reg_upper_gamma(double a, double x);

}  // namespace hamselect

#endif
