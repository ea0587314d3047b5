#include "hamselect/bounds.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "hamselect/special.hpp"

namespace hamselect {

void TwoPointModel::validate() const {
  spec.validate();
  if (d <= 2) throw std::invalid_argument("TwoPointModel: d > 2 required");
  if (s < 1 || s >= d) throw std::invalid_argument("TwoPointModel: 1 <= s < d required");
  if (!diagnostic_null && !(spec.a > 0.0))
    throw std::invalid_argument("TwoPointModel: null and alternative must differ (a > 0)");
}

namespace {

constexpr double kSolveTol = 1e-10;

double support_floor(const DistributionSpec& spec) {
  return spec.family == Family::ChiSquarePair ? 1e-300 : -std::numeric_limits<double>::infinity();
}

// Root of an increasing residual by bracket expansion from a center point and
// bisection to 1e-10. Returns nullopt if no sign change can be bracketed.
std::optional<double> solve_increasing(const std::function<double(double)>& resid, double center,
                                       double step0, double floor_x) {
  double lo = center, hi = center;
  double step = step0;
  int it = 0;
  while (resid(hi) < 0.0) {
    hi += step;
    step *= 2.0;
    if (++it > 200) return std::nullopt;
  }
  step = step0;
  it = 0;
  while (true) {
    if (lo <= floor_x) {
      lo = floor_x;
      if (resid(lo) > 0.0) return std::nullopt;
      break;
    }
    if (resid(lo) <= 0.0) break;
    lo -= step;
    step *= 2.0;
    if (++it > 200) return std::nullopt;
  }
  while (hi - lo > kSolveTol) {
    const double mid = 0.5 * (lo + hi);
    if (resid(mid) >= 0.0)
      hi = mid;
    else
      lo = mid;
  }
  return 0.5 * (lo + hi);
}

double center_of(const TwoPointModel& m) {
  if (m.spec.family == Family::ChiSquarePair) {
    const double lam = (m.spec.a / m.spec.sigma) * (m.spec.a / m.spec.sigma);
    return m.spec.sigma * m.spec.sigma * (m.spec.k + lam);
  }
  return 0.5 * m.spec.a;
}

}  // namespace

double psi_sep(const TwoPointModel& model) {
  model.validate();
  const auto& spec = model.spec;
  const double tau = std::log(static_cast<double>(model.d - model.s) / model.s);
  const auto resid = [&](double x) { return log_lr(spec, x) - tau; };
  const auto x_star =
      solve_increasing(resid, center_of(model), std::max(1.0, spec.sigma), support_floor(spec));
  if (!x_star) {
    // No crossing: the separable selector is constant. Decide which constant
    // from the residual far out on the right.
    const double probe = center_of(model) + 1e6 * std::max(1.0, spec.sigma);
    if (resid(probe) < 0.0) return static_cast<double>(model.s);  // never selects
    return static_cast<double>(model.d - model.s);                // always selects
  }
  // "<" mass at the crossing point is zero for continuous laws.
  return model.s * cdf(spec, Side::Alt, *x_star) +
         (model.d - model.s) * (1.0 - cdf(spec, Side::Null, *x_star));
}

double psi(const TwoPointModel& model, double x) {
  model.validate();
  if (model.s < 2) throw std::domain_error("psi: s >= 2 required");
  return (model.s - 1) * cdf(model.spec, Side::Alt, x) +
         (model.d - model.s) * (1.0 - cdf(model.spec, Side::Null, x));
}

double solve_t1(const TwoPointModel& model) {
  model.validate();
  if (model.s < 2) throw std::domain_error("solve_t1: s >= 2 required");
  const auto& spec = model.spec;
  const auto resid = [&](double x) {
    return (model.s - 1) * cdf(spec, Side::Alt, x) -
           (model.d - model.s) * (1.0 - cdf(spec, Side::Null, x));
  };
  const auto root =
      solve_increasing(resid, center_of(model), std::max(1.0, spec.sigma), support_floor(spec));
  if (!root) {
    std::ostringstream os;
    os << "solve_t1: bisection failed to bracket a root (center " << center_of(model) << ")";
    throw std::runtime_error(os.str());
  }
  return *root;
}

std::optional<double> solve_t2(const TwoPointModel& model) {
  model.validate();
  if (model.s < 2) throw std::domain_error("solve_t2: s >= 2 required");
  const auto& spec = model.spec;
  const double tau = std::log(static_cast<double>(model.d - model.s) / (model.s - 1));
  const auto resid = [&](double x) { return log_lr(spec, x) - tau; };
  return solve_increasing(resid, center_of(model), std::max(1.0, spec.sigma),
                          std::max(support_floor(spec), -1e12));
}

MinimaxLowerBound minimax_lower_bound(const TwoPointModel& model) {
  const double t1 = solve_t1(model);
  const double psi_t1 = psi(model, t1);
  MinimaxLowerBound b;
  b.value = psi_t1 / 20.0;
  b.applicable = (model.s <= (model.d + 2) / 3.0) && (psi_t1 >= 24.0);
  return b;
}

double block_prior_lower_bound(const TwoPointModel& model) {
  model.validate();
  if (2 * model.s >= model.d) throw std::domain_error("block_prior_lower_bound: s < d/2 required");
  const int blocks = model.d / model.s;
  if (blocks < 3) throw std::domain_error("block_prior_lower_bound: floor(d/s) >= 3 required");
  const double q = quantile(model.spec, Side::Null, 1.0 - 1.0 / (blocks - 1));
  return (1.0 - std::exp(-1.0)) * model.s * cdf(model.spec, Side::Alt, q);
}

bool exact_recovery_necessary(const TwoPointModel& model) {
  model.validate();
  if (model.d - model.s < 2) throw std::domain_error("exact_recovery_necessary: d - s >= 2 required");
  const double q0 = quantile(model.spec, Side::Null, 1.0 - 1.0 / (model.d - model.s));
  const double q1 = quantile(model.spec, Side::Alt, 1.0 / model.s);
  return q0 > q1;
}

LightTailThresholds lighttail_phase_thresholds(double nu, double sigma, int d, int s) {
  if (!(nu >= 1.0) || !(sigma > 0.0)) throw std::domain_error("lighttail_phase_thresholds: bad nu/sigma");
  if (d - s < 2 || s < 1) throw std::domain_error("lighttail_phase_thresholds: d - s >= 2, s >= 1 required");
  const double ratio = static_cast<double>(d) / s;
  if (!(ratio > 1.0)) throw std::domain_error("lighttail_phase_thresholds: d/s > 1 required");
  LightTailThresholds t;
  t.a_exact = sigma * (std::pow(nu * std::log(static_cast<double>(d - s)), 1.0 / nu) +
                       std::pow(nu * std::log(static_cast<double>(s)), 1.0 / nu));
  t.a_almost = sigma * std::pow(nu * std::log(ratio), 1.0 / nu);
  return t;
}

GroupThresholds group_phase_thresholds(double sigma, int k, int d, int s) {
  if (k < 1 || d < 2) throw std::domain_error("group_phase_thresholds: k >= 1, d >= 2 required");
  const double s2 = sigma * sigma;
  const double ld = std::log(static_cast<double>(d));
  GroupThresholds t;
  t.a2_exact = s2 * (16.0 * std::sqrt(k * ld) + 80.0 * ld);
  const double ratio = static_cast<double>(d) / s;
  if (!(ratio > 1.0)) throw std::domain_error("group_phase_thresholds: d/s > 1 required");
  const double lr = std::log(ratio);
  t.a2_almost = s2 * (16.0 * std::sqrt(k * lr) + 80.0 * lr);
  return t;
}

Chi2TailThresholds chi_square_tail_thresholds(int k, double x, double B, double c3, double c4) {
  if (k < 1 || !(x > 0.0) || B < 0.0) throw std::domain_error("chi_square_tail_thresholds: bad k/x/B");
  Chi2TailThresholds t;
  t.c3 = c3;
  t.c4 = c4;
  t.lower_dev = k - 2.0 * std::sqrt(k * x);
  t.upper_dev_central = k + c3 * std::max(x, std::sqrt(k * x));
  t.upper_dev_noncentral = k + B * B + 2.0 * std::sqrt((k + 2.0 * B * B) * x) + 2.0 * x;
  return t;
}

BoundsReport bounds_report(const TwoPointModel& model) {
  BoundsReport r;
  r.psi_sep_value = psi_sep(model);
  r.t1 = solve_t1(model);
  r.psi_t1 = psi(model, r.t1);
  r.t2 = solve_t2(model);
  r.psi_t2 = r.t2 ? psi(model, *r.t2) : std::numeric_limits<double>::quiet_NaN();
  r.minimax_lower = minimax_lower_bound(model);
  try {
    r.block_lower = block_prior_lower_bound(model);
  } catch (const std::domain_error&) {
    r.block_lower = std::numeric_limits<double>::quiet_NaN();
  }
  r.exact_recovery_blocked = model.d - model.s >= 2 && exact_recovery_necessary(model);
  return r;
}

}  // namespace hamselect
