#ifndef HAMSELECT_DIST_HPP
#define HAMSELECT_DIST_HPP

#include <span>

#include "hamselect/rng.hpp"

namespace hamselect {

enum class Family { GaussianShift, SubbotinShift, ChiSquarePair };
enum class Side { Null, Alt };

// A null/alternative density pair from one of the three shipped families.
//
// GaussianShift:  null N(0, sigma^2), alt N(a, sigma^2).
// SubbotinShift:  density c_nu/sigma * exp(-|x-m|^nu / (nu sigma^nu)),
//                 m = 0 (null) or a (alt), c_nu = nu^{1-1/nu} / (2 Gamma(1/nu)).
// ChiSquarePair:  null sigma^2 * chi^2_k, alt sigma^2 * noncentral chi^2_k with
//                 noncentrality (a/sigma)^2; with sigma = 1 the noncentrality is a^2.
//
// Every family has a common support and a nondecreasing log-likelihood ratio.
struct DistributionSpec {
  Family family = Family::GaussianShift;
  double a = 0.0;      // signal amplitude, units of X (column norm for ChiSquarePair)
  double sigma = 1.0;  // scale
  double nu = 2.0;     // Subbotin shape, >= 1
  int k = 1;           // chi-square degrees of freedom

  static DistributionSpec gaussian(double a, double sigma = 1.0);
  static DistributionSpec subbotin(double nu, double a, double sigma = 1.0);
  static DistributionSpec chi_square_pair(int k, double a, double sigma = 1.0);

  void validate() const;  // throws std::invalid_argument
};

double log_pdf(const DistributionSpec& spec, Side side, double x);
double log_lr(const DistributionSpec& spec, double x);
double cdf(const DistributionSpec& spec, Side side, double x);

// Left-most root convention: quantile(p) = min{v : F(v) = p}, bisection to 1e-10.
double quantile(const DistributionSpec& spec, Side side, double p);

double sample(const DistributionSpec& spec, Side side, RngStream& rng);

// True iff the log-ratio values are nondecreasing (tolerance -1e-12 on steps).
bool check_mlr_values(std::span<const double> log_ratios);
bool check_mlr(const DistributionSpec& spec, std::span<const double> grid);

// Light-tail class membership: both tails of the candidate's null CDF must be
// dominated by exp(-u^nu / nu) at every grid point u >= 0.
bool subbotin_class_check(const DistributionSpec& candidate, double nu,
                          std::span<const double> grid);

}  // namespace hamselect

#endif
