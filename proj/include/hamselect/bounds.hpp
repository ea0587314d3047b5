#ifndef HAMSELECT_BOUNDS_HPP
#define HAMSELECT_BOUNDS_HPP

#include <optional>

#include "hamselect/model.hpp"

namespace hamselect {

// Hamming risk of the best separable selector:
// s P1(s f1 < (d-s) f0) + (d-s) P0(s f1 >= (d-s) f0).
double psi_sep(const TwoPointModel& model);

// Risk surrogate (s-1) F1(x) + (d-s) (1 - F0(x)); requires s >= 2.
double psi(const TwoPointModel& model, double x);

// Unique root of (s-1) F1(x) = (d-s) (1 - F0(x)); requires s >= 2.
double solve_t1(const TwoPointModel& model);

// Root of (s-1) f1(x) = (d-s) f0(x); may not exist (no bracketed sign change).
std::optional<double> solve_t2(const TwoPointModel& model);

struct MinimaxLowerBound {
  double value = 0.0;      // psi(t1) / 20
  bool applicable = false; // s <= (d+2)/3 and psi(t1) >= 24
};
MinimaxLowerBound minimax_lower_bound(const TwoPointModel& model);

// Block-prior lower bound (1 - 1/e) s F1(F0^{-1}(1 - 1/(floor(d/s) - 1))).
// Requires s < d/2 and floor(d/s) >= 3.
double block_prior_lower_bound(const TwoPointModel& model);

// True iff F0^{-1}(1 - 1/(d-s)) > F1^{-1}(1/s): exact recovery is blocked and
// the (1 - 1/e)^2 separation bound applies.
bool exact_recovery_necessary(const TwoPointModel& model);

struct LightTailThresholds {
  double a_exact = 0.0;   // sigma ((nu log(d-s))^{1/nu} + (nu log s)^{1/nu})
  double a_almost = 0.0;  // sigma (nu log(d/s))^{1/nu}
};
LightTailThresholds lighttail_phase_thresholds(double nu, double sigma, int d, int s);

struct GroupThresholds {
  double a2_exact = 0.0;   // sigma^2 (16 sqrt(k log d) + 80 log d)
  double a2_almost = 0.0;  // same with log(d/s)
};
GroupThresholds group_phase_thresholds(double sigma, int k, int d, int s);

// Chi-square deviation thresholds; callers assert the tail inequalities by
// Monte Carlo. The (c3, c4) pair parameterizes the unpinned lower-tail
// constant inequality and is reported, not asserted.
struct Chi2TailThresholds {
  double lower_dev = 0.0;              // k - 2 sqrt(k x),  P(chi <= .) <= e^{-x}
  double upper_dev_central = 0.0;      // k + c3 max(x, sqrt(k x)),  P(chi >= .) >= c4 e^{-x}
  double upper_dev_noncentral = 0.0;   // k + B^2 + 2 sqrt((k+2B^2) x) + 2x,  P(Z >= .) <= e^{-x}
  double c3 = 4.0;
  double c4 = 0.02;
};
Chi2TailThresholds chi_square_tail_thresholds(int k, double x, double B = 0.0,
                                              double c3 = 4.0, double c4 = 0.02);

struct BoundsReport {
  double psi_sep_value = 0.0;
  double t1 = 0.0;
  std::optional<double> t2;
  double psi_t1 = 0.0;
  double psi_t2 = 0.0;  // NaN when t2 does not exist
  MinimaxLowerBound minimax_lower;
  double block_lower = 0.0;  // NaN when preconditions fail
  bool exact_recovery_blocked = false;
};
// s >= 2 required (the psi/t1/t2 machinery is defined for s >= 2).
BoundsReport bounds_report(const TwoPointModel& model);

}  // namespace hamselect

#endif
