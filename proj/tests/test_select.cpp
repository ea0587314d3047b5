#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <vector>

#include "hamselect/rng.hpp"
#include "hamselect/select.hpp"

using namespace hamselect;

namespace {

std::vector<double> logs(std::initializer_list<double> vals) {
  std::vector<double> out;
  for (double v : vals) out.push_back(std::log(v));
  return out;
}

std::vector<std::uint8_t> bits(std::initializer_list<int> vals) {
  std::vector<std::uint8_t> out;
  for (int v : vals) out.push_back(static_cast<std::uint8_t>(v));
  return out;
}

}  // namespace

TEST_CASE("support pattern basics") {
  const auto p = SupportPattern::leading(5, 2);
  CHECK(p.bits == bits({1, 1, 0, 0, 0}));
  CHECK(p.count() == 2);
  CHECK(p.support() == std::vector<int>{0, 1});
  CHECK(hamming_distance(p, SupportPattern::zeros(5)) == 2);
  CHECK_THROWS(hamming_distance(p, SupportPattern::zeros(4)));
}

TEST_CASE("separable selector, gaussian threshold a/2 + ln((d-s)/s)/a") {
  TwoPointModel m;
  m.spec = DistributionSpec::gaussian(2.0, 1.0);
  m.d = 3;
  m.s = 1;
  const std::vector<double> X{2.0, 0.0, 1.0};
  CHECK(separable_select(m, X).bits == bits({1, 0, 0}));
  // threshold sits at 1 + ln(2)/2
  const double thr = 1.0 + std::log(2.0) / 2.0;
  const std::vector<double> edge{thr, thr - 1e-9, 0.0};
  CHECK(separable_select(m, edge).bits == bits({1, 0, 0}));
}

TEST_CASE("scan selector and ties") {
  CHECK(scan_select_lr(logs({3, 1, 2}), 2).pattern.bits == bits({1, 0, 1}));
  CHECK(scan_select_lr(logs({0.1, 0.5, 0.3, 0.2}), 1).pattern.bits == bits({0, 1, 0, 0}));
  const auto tied = scan_select_lr(std::vector<double>(4, 0.0), 2);
  CHECK(tied.pattern.bits == bits({1, 1, 0, 0}));
  CHECK(tied.meta.tie_flag);
  CHECK(tied.meta.selected_count == 2);
  const std::vector<double> X{3.0, 1.0, 2.0};
  CHECK(scan_select_obs(X, 2).pattern.bits == bits({1, 0, 1}));
  CHECK_THROWS(scan_select_obs(std::vector<double>{1, 2, 3, 4}, 4));
  const std::vector<double> dup{5.0, 1.0, 5.0};
  const auto r = scan_select_obs(dup, 1);
  CHECK(r.pattern.bits == bits({1, 0, 0}));
  CHECK(r.meta.tie_flag);
}

TEST_CASE("s=1 selector: L_j >= sum of the others") {
  CHECK(bayes_select_s1(logs({10, 1, 2})).bits == bits({1, 0, 0}));
  CHECK(bayes_select_s1(logs({1, 1, 1})).bits == bits({0, 0, 0}));
  CHECK(bayes_select_s1(logs({6, 3, 3})).bits == bits({1, 0, 0}));
}

TEST_CASE("posterior selector against hand-checked and brute force") {
  CHECK(bayes_select(logs({4, 2, 1}), 2).bits == bits({1, 1, 0}));
  CHECK(bayes_select(logs({7, 7, 7, 7}), 2).bits == bits({1, 1, 1, 1}));
  CHECK(bayes_select(logs({1.9, 3, 2, 1}), 2).bits == bits({1, 1, 1, 0}));
  CHECK(bayes_select_bruteforce(std::vector<double>{4, 2, 1}, 2).bits == bits({1, 1, 0}));
  CHECK(bayes_select_bruteforce(std::vector<double>{1.9, 3, 2, 1}, 2).bits == bits({1, 1, 1, 0}));
  CHECK_THROWS(bayes_select_bruteforce(std::vector<double>(21, 1.0), 2));
}

TEST_CASE("posterior marginals threshold at 1/2 and sum to s") {
  RngStream rs(31, 0);
  for (int t = 0; t < 300; ++t) {
    const int d = 3 + static_cast<int>(rs.uniform() * 10);
    const int s = 2 + static_cast<int>(rs.uniform() * (d - 2));
    std::vector<double> logL(static_cast<std::size_t>(d));
    for (auto& v : logL) v = -8.0 + 16.0 * rs.uniform();
    const auto sel = bayes_select(logL, s);
    const auto marg = bayes_posterior_marginals(logL, s);
    double sum = 0.0;
    for (int j = 0; j < d; ++j) {
      sum += marg[static_cast<std::size_t>(j)];
      CHECK((marg[static_cast<std::size_t>(j)] >= 0.5) ==
            (sel.bits[static_cast<std::size_t>(j)] != 0));
    }
    CHECK(sum == doctest::Approx(static_cast<double>(s)).epsilon(1e-9));
  }
}

TEST_CASE("nestedness along the sorted order") {
  RngStream rs(17, 0);
  for (int t = 0; t < 2000; ++t) {
    const int d = 3 + static_cast<int>(rs.uniform() * 10);
    const int s = 2 + static_cast<int>(rs.uniform() * (d - 2));
    std::vector<double> logL(static_cast<std::size_t>(d));
    for (auto& v : logL) v = -6.0 + 12.0 * rs.uniform();
    const auto sel = bayes_select(logL, s);
    std::vector<int> order(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) order[static_cast<std::size_t>(i)] = i;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      return logL[static_cast<std::size_t>(a)] > logL[static_cast<std::size_t>(b)];
    });
    for (int i = 0; i + 1 < d; ++i) {
      if (sel.bits[static_cast<std::size_t>(order[static_cast<std::size_t>(i + 1)])])
        CHECK(sel.bits[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])] == 1);
    }
  }
}

TEST_CASE("s=1 selector sets at most one bit under distinct inputs") {
  RngStream rs(23, 0);
  for (int t = 0; t < 500; ++t) {
    const int d = 2 + static_cast<int>(rs.uniform() * 10);
    std::vector<double> logL(static_cast<std::size_t>(d));
    for (auto& v : logL) v = 3.0 * rs.normal();
    const auto sel = bayes_select_s1(logL);
    CHECK(sel.count() <= 1);
    if (sel.count() == 1) {
      const int j = sel.support()[0];
      for (int i = 0; i < d; ++i)
        CHECK(logL[static_cast<std::size_t>(j)] >= logL[static_cast<std::size_t>(i)]);
    }
  }
}

TEST_CASE("thresholding is strict") {
  const std::vector<double> X{3.0, 1.0, 2.0};
  CHECK(threshold_select(X, 1.5).bits == bits({1, 0, 1}));
  CHECK(threshold_select(X, 10.0).bits == bits({0, 0, 0}));
  CHECK(threshold_select(X, 2.0).bits == bits({1, 0, 0}));
}

TEST_CASE("threshold formulas") {
  const double e2 = std::exp(2.0);
  CHECK(lighttail_threshold(1.0, 1.0, e2) == doctest::Approx(2.0 + std::log(2.0)).epsilon(1e-12));
  CHECK(lighttail_threshold(2.0, 1.0, e2) ==
        doctest::Approx(std::sqrt(4.0 + 2.0 * std::log(2.0))).epsilon(1e-12));
  CHECK(lighttail_threshold(2.0, 2.0, e2) ==
        doctest::Approx(2.0 * lighttail_threshold(2.0, 1.0, e2)).epsilon(1e-12));
  CHECK_THROWS_AS(lighttail_threshold(2.0, 1.0, 2.0), std::domain_error);

  CHECK(group_threshold(1.0, 1, 1.0) == doctest::Approx(9.0).epsilon(1e-12));
  const double ld = std::log(100.0);
  CHECK(group_threshold(1.0, 4, ld) ==
        doctest::Approx(4.0 + 4.0 * ld + 4.0 * std::sqrt(4.0 * ld)).epsilon(1e-12));
  CHECK(group_threshold(2.0, 3, 1.5) == doctest::Approx(4.0 * group_threshold(1.0, 3, 1.5)).epsilon(1e-12));
  CHECK_THROWS_AS(group_threshold(1.0, 3, 0.0), std::domain_error);
}

TEST_CASE("scan never beats thresholding by more than a factor 2 pointwise") {
  RngStream rs(41, 0);
  for (int t = 0; t < 3000; ++t) {
    const int d = 4 + static_cast<int>(rs.uniform() * 13);
    const int s = 1 + static_cast<int>(rs.uniform() * (d - 1));
    std::vector<double> X(static_cast<std::size_t>(d));
    for (auto& v : X) v = 3.0 * rs.normal();
    const double lambda = std::abs(2.0 * rs.normal()) + 1e-9;
    SupportPattern eta = SupportPattern::zeros(d);
    for (int i = 0; i < d; ++i)
      eta.bits[static_cast<std::size_t>(i)] = rs.uniform() < 0.5;
    // The factor-2 bound needs |eta| = s; fix the count by truncation.
    int have = eta.count();
    for (int i = 0; i < d && have != s; ++i) {
      if (have > s && eta.bits[static_cast<std::size_t>(i)]) {
        eta.bits[static_cast<std::size_t>(i)] = 0;
        --have;
      } else if (have < s && !eta.bits[static_cast<std::size_t>(i)]) {
        eta.bits[static_cast<std::size_t>(i)] = 1;
        ++have;
      }
    }
    const auto scan = scan_select_obs(X, s).pattern;
    const auto thr = threshold_select(X, lambda);
    CHECK(hamming_distance(scan, eta) <= 2 * hamming_distance(thr, eta));
  }
}
