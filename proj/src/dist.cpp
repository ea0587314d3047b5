#include "hamselect/dist.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "hamselect/special.hpp"

namespace hamselect {

namespace {

constexpr double kLogTrunc = -36.8413614879047;  // log(1e-16)

double shift_of(const DistributionSpec& spec, Side side) {
  return side == Side::Alt ? spec.a : 0.0;
}

double subbotin_log_norm(double nu) {
  // log of nu^{1-1/nu} / (2 Gamma(1/nu))
  return (1.0 - 1.0 / nu) * std::log(nu) - std::log(2.0) - std::lgamma(1.0 / nu);
}

// log 0F1(k/2; lam*z/4), the confluent series of the noncentral/central
// chi-square density ratio, accumulated in log domain with relative
// truncation 1e-16. Terms follow the recurrence
//   t_{j+1} = t_j + log(lam*z/4) - log(j+1) - log(k/2 + j).
double log_chi2_ratio_series(int k, double lam, double z) {
  if (lam == 0.0 || z == 0.0) return 0.0;
  const double logw = std::log(lam * z / 4.0);
  const double half_k = 0.5 * k;
  double term = 0.0;
  double acc = 0.0;  // log of partial sum, starts at log(1) for j=0
  for (int j = 0; j < 1000000; ++j) {
    term += logw - std::log(static_cast<double>(j + 1)) - std::log(half_k + j);
    acc = log_sum_exp(acc, term);
    const bool past_peak = logw < std::log(static_cast<double>(j + 2)) + std::log(half_k + j + 1);
    if (past_peak && term < acc + kLogTrunc) break;
  }
  return acc;
}

double central_chi2_cdf(int k, double z) {
  if (z <= 0.0) return 0.0;
  return reg_lower_gamma(0.5 * k, 0.5 * z);
}

// Poisson(lam/2)-weighted mixture of central CDFs with k, k+2, ... degrees of
// freedom, truncated when the remaining Poisson mass is below 1e-14.
double noncentral_chi2_cdf(int k, double lam, double z) {
  if (z <= 0.0) return 0.0;
  if (lam == 0.0) return central_chi2_cdf(k, z);
  const double half = 0.5 * lam;
  const double log_half = std::log(half);
  double logw = -half;  // log Poisson weight at j = 0
  double acc = 0.0;
  double mass = 0.0;
  for (int j = 0; j < 1000000; ++j) {
    const double w = std::exp(logw);
    acc += w * central_chi2_cdf(k + 2 * j, z);
    mass += w;
    if (j > half && 1.0 - mass < 1e-14) break;
    logw += log_half - std::log(static_cast<double>(j + 1));
  }
  return std::min(acc, 1.0);
}

}  // namespace

DistributionSpec DistributionSpec::gaussian(double a, double sigma) {
  DistributionSpec s;
  s.family = Family::GaussianShift;
  s.a = a;
  s.sigma = sigma;
  s.validate();
  return s;
}

DistributionSpec DistributionSpec::subbotin(double nu, double a, double sigma) {
  DistributionSpec s;
  s.family = Family::SubbotinShift;
  s.nu = nu;
  s.a = a;
  s.sigma = sigma;
  s.validate();
  return s;
}

DistributionSpec DistributionSpec::chi_square_pair(int k, double a, double sigma) {
  DistributionSpec s;
  s.family = Family::ChiSquarePair;
  s.k = k;
  s.a = a;
  s.sigma = sigma;
  s.validate();
  return s;
}

void DistributionSpec::validate() const {
  if (!(sigma > 0.0)) throw std::invalid_argument("DistributionSpec: sigma must be > 0");
  if (!(a >= 0.0)) throw std::invalid_argument("DistributionSpec: a must be >= 0");
  if (family == Family::SubbotinShift && !(nu >= 1.0))
    throw std::invalid_argument("DistributionSpec: nu must be >= 1");
  if (family == Family::ChiSquarePair && k < 1)
    throw std::invalid_argument("DistributionSpec: k must be >= 1");
}

double log_pdf(const DistributionSpec& spec, Side side, double x) {
  switch (spec.family) {
    case Family::GaussianShift: {
      const double u = (x - shift_of(spec, side)) / spec.sigma;
      return -0.5 * u * u - std::log(spec.sigma) - 0.9189385332046727418;  // log sqrt(2 pi)
    }
    case Family::SubbotinShift: {
      const double u = std::fabs(x - shift_of(spec, side)) / spec.sigma;
      return subbotin_log_norm(spec.nu) - std::log(spec.sigma) - std::pow(u, spec.nu) / spec.nu;
    }
    case Family::ChiSquarePair: {
      if (!(x > 0.0)) throw std::domain_error("log_pdf: chi-square support is x > 0");
      const double s2 = spec.sigma * spec.sigma;
      const double z = x / s2;
      const double hk = 0.5 * spec.k;
      double lp = (hk - 1.0) * std::log(z) - 0.5 * z - hk * std::log(2.0) -
                  std::lgamma(hk) - std::log(s2);
      if (side == Side::Alt) {
        const double lam = (spec.a / spec.sigma) * (spec.a / spec.sigma);
        lp += -0.5 * lam + log_chi2_ratio_series(spec.k, lam, z);
      }
      return lp;
    }
  }
  throw std::logic_error("log_pdf: unknown family");
}

double log_lr(const DistributionSpec& spec, double x) {
  switch (spec.family) {
    case Family::GaussianShift: {
      const double s2 = spec.sigma * spec.sigma;
      return spec.a * (2.0 * x - spec.a) / (2.0 * s2);
    }
    case Family::SubbotinShift: {
      const double u0 = std::fabs(x) / spec.sigma;
      const double u1 = std::fabs(x - spec.a) / spec.sigma;
      return (std::pow(u0, spec.nu) - std::pow(u1, spec.nu)) / spec.nu;
    }
    case Family::ChiSquarePair: {
      if (!(x > 0.0)) throw std::domain_error("log_lr: chi-square support is x > 0");
      if (spec.a == 0.0) return 0.0;
      const double lam = (spec.a / spec.sigma) * (spec.a / spec.sigma);
      const double z = x / (spec.sigma * spec.sigma);
      return -0.5 * lam + log_chi2_ratio_series(spec.k, lam, z);
    }
  }
  throw std::logic_error("log_lr: unknown family");
}

double cdf(const DistributionSpec& spec, Side side, double x) {
  switch (spec.family) {
    case Family::GaussianShift:
      return normal_cdf((x - shift_of(spec, side)) / spec.sigma);
    case Family::SubbotinShift: {
      const double u = (x - shift_of(spec, side)) / spec.sigma;
      const double tail = 0.5 * reg_lower_gamma(1.0 / spec.nu, std::pow(std::fabs(u), spec.nu) / spec.nu);
      return u >= 0.0 ? 0.5 + tail : 0.5 - tail;
    }
    case Family::ChiSquarePair: {
      const double z = x / (spec.sigma * spec.sigma);
      if (side == Side::Null || spec.a == 0.0) return central_chi2_cdf(spec.k, z);
      const double lam = (spec.a / spec.sigma) * (spec.a / spec.sigma);
      return noncentral_chi2_cdf(spec.k, lam, z);
    }
  }
  throw std::logic_error("cdf: unknown family");
}

double quantile(const DistributionSpec& spec, Side side, double p) {
  if (!(p > 0.0 && p < 1.0)) throw std::domain_error("quantile: p must be in (0,1)");
  const bool positive_support = spec.family == Family::ChiSquarePair;

  // Bracket by exponential expansion from a central point.
  double center;
  if (positive_support) {
    const double lam = side == Side::Alt ? (spec.a / spec.sigma) * (spec.a / spec.sigma) : 0.0;
    center = spec.sigma * spec.sigma * (spec.k + lam);
  } else {
    center = shift_of(spec, side);
  }
  double step = std::max(1.0, spec.sigma);
  double lo = center, hi = center;
  for (int i = 0; i < 200 && cdf(spec, side, hi) < p; ++i) {
    hi += step;
    step *= 2.0;
  }
  step = std::max(1.0, spec.sigma);
  for (int i = 0; i < 200 && cdf(spec, side, lo) >= p; ++i) {
    lo -= step;
    step *= 2.0;
    if (positive_support && lo < 0.0) {
      lo = 0.0;
      break;
    }
  }
  while (hi - lo > 1e-10) {
    const double mid = 0.5 * (lo + hi);
    if (cdf(spec, side, mid) >= p)
      hi = mid;
    else
      lo = mid;
  }
  return hi;  // left-most point with F(v) >= p, within tolerance
}

double sample(const DistributionSpec& spec, Side side, RngStream& rng) {
  switch (spec.family) {
    case Family::GaussianShift:
      return spec.sigma * rng.normal() + shift_of(spec, side);
    case Family::SubbotinShift: {
      const double g = rng.gamma(1.0 / spec.nu);
      const double mag = std::pow(spec.nu * g, 1.0 / spec.nu);
      const double sign = rng.uniform() < 0.5 ? -1.0 : 1.0;
      return spec.sigma * sign * mag + shift_of(spec, side);
    }
    case Family::ChiSquarePair: {
      // sigma^2 * ((a/sigma [alt] + Z_1)^2 + sum_{i=2}^k Z_i^2), exact law.
      const double m = side == Side::Alt ? spec.a / spec.sigma : 0.0;
      double z1 = m + rng.normal();
      double acc = z1 * z1;
      for (int i = 1; i < spec.k; ++i) {
        const double z = rng.normal();
        acc += z * z;
      }
      return spec.sigma * spec.sigma * acc;
    }
  }
  throw std::logic_error("sample: unknown family");
}

bool check_mlr_values(std::span<const double> log_ratios) {
  if (log_ratios.size() < 2) throw std::domain_error("check_mlr: need at least 2 grid points");
  for (std::size_t i = 1; i < log_ratios.size(); ++i)
    if (log_ratios[i] - log_ratios[i - 1] < -1e-12) return false;
  return true;
}

bool check_mlr(const DistributionSpec& spec, std::span<const double> grid) {
  if (grid.size() < 2) throw std::domain_error("check_mlr: need at least 2 grid points");
  std::vector<double> vals;
  vals.reserve(grid.size());
  for (double x : grid) vals.push_back(log_lr(spec, x));
  return check_mlr_values(vals);
}

bool subbotin_class_check(const DistributionSpec& candidate, double nu,
                          std::span<const double> grid) {
  if (!(nu >= 1.0)) throw std::domain_error("subbotin_class_check: nu must be >= 1");
  for (double u : grid) {
    if (u < 0.0) throw std::domain_error("subbotin_class_check: grid points must be >= 0");
    const double bound = std::exp(-std::pow(u, nu) / nu) + 1e-12;
    if (1.0 - cdf(candidate, Side::Null, u) > bound) return false;
    if (cdf(candidate, Side::Null, -u) > bound) return false;
  }
  return true;
}

}  // namespace hamselect
