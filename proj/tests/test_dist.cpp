#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "hamselect/dist.hpp"

using namespace hamselect;

namespace {

std::vector<double> grid(double lo, double hi, int n) {
  std::vector<double> g(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) g[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (n - 1);
  return g;
}

}  // namespace

TEST_CASE("gaussian closed forms") {
  const auto spec = DistributionSpec::gaussian(2.0, 1.0);
  CHECK(log_pdf(spec, Side::Null, 0.0) ==
        doctest::Approx(-0.5 * std::log(2.0 * M_PI)).epsilon(1e-12));
  CHECK(log_pdf(spec, Side::Alt, 2.0) ==
        doctest::Approx(-0.5 * std::log(2.0 * M_PI)).epsilon(1e-12));
  // log ratio a(2x - a) / (2 sigma^2)
  for (double x : {-1.0, 0.0, 0.7, 2.0, 3.5})
    CHECK(log_lr(spec, x) == doctest::Approx(2.0 * (2.0 * x - 2.0) / 2.0).epsilon(1e-12));
  CHECK(cdf(spec, Side::Null, 0.0) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(cdf(spec, Side::Null, 1.959963984540054) == doctest::Approx(0.975).epsilon(1e-9));
  CHECK(cdf(spec, Side::Alt, 2.0) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("subbotin nu=2 matches the gaussian") {
  const auto sub = DistributionSpec::subbotin(2.0, 1.5, 1.0);
  const auto gauss = DistributionSpec::gaussian(1.5, 1.0);
  CHECK(log_pdf(sub, Side::Null, 0.0) == doctest::Approx(-0.9189385332046727).epsilon(1e-9));
  for (double x : {-2.0, -0.3, 0.0, 1.1, 2.5}) {
    CHECK(log_pdf(sub, Side::Null, x) ==
          doctest::Approx(log_pdf(gauss, Side::Null, x)).epsilon(1e-9));
    CHECK(cdf(sub, Side::Alt, x) == doctest::Approx(cdf(gauss, Side::Alt, x)).epsilon(1e-9));
    CHECK(log_lr(sub, x) == doctest::Approx(log_lr(gauss, x)).epsilon(1e-9));
  }
}

TEST_CASE("subbotin nu=1 is a laplace density") {
  const auto spec = DistributionSpec::subbotin(1.0, 0.0, 1.0);
  for (double x : {-1.5, 0.0, 0.4, 2.0})
    CHECK(log_pdf(spec, Side::Null, x) ==
          doctest::Approx(std::log(0.5) - std::abs(x)).epsilon(1e-12));
  CHECK(cdf(spec, Side::Null, 0.0) == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(cdf(spec, Side::Null, 1.0) == doctest::Approx(1.0 - 0.5 * std::exp(-1.0)).epsilon(1e-9));
}

TEST_CASE("chi-square pair closed forms") {
  const auto spec = DistributionSpec::chi_square_pair(2, 2.0, 1.0);
  // Central chi^2_2 is Exp(1/2).
  for (double x : {0.5, 1.0, 3.0})
    CHECK(cdf(spec, Side::Null, x) == doctest::Approx(1.0 - std::exp(-x / 2.0)).epsilon(1e-10));
  // Density ratio 0F1(k/2; lambda x / 4) e^{-lambda/2}, k = 2, lambda = 4:
  // 0F1(1; z) = sum z^m / (m!)^2 = I_0(2 sqrt z).
  const double x = 1.5;
  const double z = 4.0 * x / 4.0;
  double term = 1.0, series = 1.0;
  for (int m = 1; m < 60; ++m) {
    term *= z / (m * static_cast<double>(m));
    series += term;
  }
  CHECK(log_lr(spec, x) == doctest::Approx(-2.0 + std::log(series)).epsilon(1e-10));
}

TEST_CASE("noncentral cdf against a mixture cross-check") {
  const auto spec = DistributionSpec::chi_square_pair(5, std::sqrt(30.0), 1.0);
  // F_noncentral(x) = E_P [F_central(k + 2P)] with P ~ Poisson(lambda / 2).
  for (double x : {10.0, 30.0, 60.0}) {
    double acc = 0.0, logw = -15.0;
    for (int p = 0; p < 400; ++p) {
      const auto central = DistributionSpec::chi_square_pair(5 + 2 * p, 1.0, 1.0);
      acc += std::exp(logw) * cdf(central, Side::Null, x);
      logw += std::log(15.0) - std::log(p + 1.0);
    }
    CHECK(cdf(spec, Side::Alt, x) == doctest::Approx(acc).epsilon(1e-8));
  }
}

TEST_CASE("scale parameter rescales the chi-square pair") {
  const auto unit = DistributionSpec::chi_square_pair(4, 3.0, 1.0);
  const auto scaled = DistributionSpec::chi_square_pair(4, 6.0, 2.0);
  for (double x : {1.0, 5.0, 20.0}) {
    CHECK(cdf(scaled, Side::Null, 4.0 * x) ==
          doctest::Approx(cdf(unit, Side::Null, x)).epsilon(1e-10));
    CHECK(log_lr(scaled, 4.0 * x) == doctest::Approx(log_lr(unit, x)).epsilon(1e-10));
  }
}

TEST_CASE("quantile inverts the cdf, left-most convention") {
  for (const auto& spec :
       {DistributionSpec::gaussian(1.0, 2.0), DistributionSpec::subbotin(1.5, 0.5, 1.0),
        DistributionSpec::chi_square_pair(3, 2.0, 1.0)}) {
    for (double p : {0.01, 0.3, 0.5, 0.9, 0.999}) {
      for (Side side : {Side::Null, Side::Alt}) {
        const double q = quantile(spec, side, p);
        CHECK(cdf(spec, side, q) == doctest::Approx(p).epsilon(1e-7));
      }
    }
  }
}

TEST_CASE("monotone likelihood ratio on a grid") {
  const auto g = grid(-6.0, 6.0, 400);
  CHECK(check_mlr(DistributionSpec::gaussian(1.7, 0.8), g));
  CHECK(check_mlr(DistributionSpec::subbotin(1.0, 2.0, 1.0), g));
  CHECK(check_mlr(DistributionSpec::subbotin(3.0, 1.0, 1.0), g));
  CHECK(check_mlr(DistributionSpec::chi_square_pair(4, 2.5, 1.0), grid(0.01, 60.0, 400)));
  std::vector<double> bad{0.0, 1.0, 0.5};
  CHECK_FALSE(check_mlr_values(bad));
}

TEST_CASE("light-tail class membership") {
  const auto g = grid(0.0, 8.0, 200);
  CHECK(subbotin_class_check(DistributionSpec::gaussian(0.0, 1.0), 2.0, g));
  CHECK(subbotin_class_check(DistributionSpec::subbotin(2.0, 0.0, 1.0), 2.0, g));
  // A heavier tail than nu = 2 fails the nu = 2 envelope.
  CHECK_FALSE(subbotin_class_check(DistributionSpec::subbotin(1.0, 0.0, 1.0), 2.0, g));
}

TEST_CASE("sampling matches the cdf") {
  RngStream rs(2024, 0);
  for (const auto& spec :
       {DistributionSpec::gaussian(2.0, 1.0), DistributionSpec::subbotin(1.0, 1.0, 1.0),
        DistributionSpec::chi_square_pair(5, 2.0, 1.0)}) {
    const long n = 40000;
    const double med = quantile(spec, Side::Alt, 0.5);
    long below = 0;
    double mean = 0.0;
    for (long i = 0; i < n; ++i) {
      const double v = sample(spec, Side::Alt, rs);
      below += v <= med;
      mean += v / n;
    }
    const double se = 0.5 / std::sqrt(static_cast<double>(n));
    CHECK(std::abs(static_cast<double>(below) / n - 0.5) <= 4.0 * se);
    (void)mean;
  }
}

TEST_CASE("parameter validation") {
  CHECK_THROWS(DistributionSpec::gaussian(1.0, 0.0).validate());
  CHECK_THROWS(DistributionSpec::subbotin(0.5, 1.0, 1.0).validate());
  CHECK_THROWS(DistributionSpec::chi_square_pair(0, 1.0, 1.0).validate());
  CHECK_THROWS_AS(log_pdf(DistributionSpec::chi_square_pair(2, 1.0, 1.0), Side::Null, -1.0),
                  std::domain_error);
}
