#include "hamselect/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "hamselect/bounds.hpp"
#include "hamselect/risklab.hpp"
#include "hamselect/rng.hpp"
#include "hamselect/select.hpp"
#include "hamselect/special.hpp"
#include "hamselect/sympoly.hpp"

namespace hamselect {

namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

CheckResult check(const std::string& name, bool pass, const std::string& detail) {
  return CheckResult{name, pass, detail};
}

std::vector<double> random_log_weights(RngStream& rs, int d) {
  std::vector<double> logL(static_cast<std::size_t>(d));
  for (auto& v : logL) v = -8.0 + 16.0 * rs.uniform();
  return logL;
}

SuiteReport suite_sympoly(std::uint64_t seed) {
  SuiteReport rep{"sympoly", {}};
  RngStream rs(seed, 0);
  double worst_rel = 0.0;
  bool excl_ok = true, recur_ok = true, mono_ok = true;
  for (int t = 0; t < 200; ++t) {
    const int d = 3 + static_cast<int>(rs.uniform() * 10);
    const auto logL = random_log_weights(rs, d);
    std::vector<double> L(logL.size());
    for (std::size_t i = 0; i < L.size(); ++i) L[i] = std::exp(logL[i]);
    for (int m = 0; m <= d; ++m) {
      const double exact = brute_force_elem_sym(L, m);
      const double got = std::exp(log_elem_sym(logL, m));
      worst_rel = std::max(worst_rel, std::abs(got - exact) / exact);
    }
    const int m = 1 + static_cast<int>(rs.uniform() * (d - 1));
    const int j = static_cast<int>(rs.uniform() * d);
    std::vector<double> rest;
    for (int i = 0; i < d; ++i)
      if (i != j) rest.push_back(L[static_cast<std::size_t>(i)]);
    const double excl = std::exp(log_elem_sym_excluding(logL, m, j));
    const double excl_exact = brute_force_elem_sym(rest, m);
    if (std::abs(excl - excl_exact) / excl_exact > 1e-10) excl_ok = false;
    // e_m(full) = e_m(-j) + L_j e_{m-1}(-j), in log domain.
    const double lhs = log_elem_sym(logL, m);
    const double rhs = log_sum_exp(log_elem_sym_excluding(logL, m, j),
                                   logL[static_cast<std::size_t>(j)] +
                                       log_elem_sym_excluding(logL, m - 1, j));
    if (std::abs(lhs - rhs) > 1e-9) recur_ok = false;
    auto bumped = logL;
    bumped[static_cast<std::size_t>(j)] += 0.25;
    if (log_elem_sym(bumped, m) < lhs - 1e-12) mono_ok = false;
  }
  rep.checks.push_back(check("brute_force_agreement", worst_rel <= 1e-10,
                             "worst relative error " + fmt(worst_rel)));
  rep.checks.push_back(check("exclusion_agreement", excl_ok, "excluded values vs enumeration"));
  rep.checks.push_back(check("recurrence_identity", recur_ok, "e_m = e_m(-j) + L_j e_{m-1}(-j)"));
  rep.checks.push_back(check("monotonicity", mono_ok, "single-entry increase never decreases e_m"));
  return rep;
}

SuiteReport suite_bayes(std::uint64_t seed) {
  SuiteReport rep{"bayes", {}};
  RngStream rs(seed, 0);
  bool bf_ok = true, marg_ok = true, nested_ok = true;
  double worst_sum = 0.0;
  for (int t = 0; t < 1000; ++t) {
    const int d = 3 + static_cast<int>(rs.uniform() * 10);
    const int s = 2 + static_cast<int>(rs.uniform() * (d - 2));
    const auto logL = random_log_weights(rs, d);
    std::vector<double> L(logL.size());
    for (std::size_t i = 0; i < L.size(); ++i) L[i] = std::exp(logL[i]);
    const auto fast = bayes_select(logL, s);
    if (!(fast == bayes_select_bruteforce(L, s))) bf_ok = false;
    const auto marg = bayes_posterior_marginals(logL, s);
    double sum = 0.0;
    for (int j = 0; j < d; ++j) {
      sum += marg[static_cast<std::size_t>(j)];
      if ((marg[static_cast<std::size_t>(j)] >= 0.5) !=
          (fast.bits[static_cast<std::size_t>(j)] != 0))
        marg_ok = false;
    }
    worst_sum = std::max(worst_sum, std::abs(sum - s));
    // Nestedness: selection is monotone along the sorted order of L.
    std::vector<int> order(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) order[static_cast<std::size_t>(i)] = i;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      return L[static_cast<std::size_t>(a)] > L[static_cast<std::size_t>(b)];
    });
    for (int i = 0; i + 1 < d; ++i)
      if (fast.bits[static_cast<std::size_t>(order[static_cast<std::size_t>(i + 1)])] &&
          !fast.bits[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])])
        nested_ok = false;
  }
  rep.checks.push_back(check("bruteforce_agreement", bf_ok, "exact pattern equality, 1000 draws"));
  rep.checks.push_back(check("marginal_thresholding", marg_ok, "bit set iff marginal >= 1/2"));
  rep.checks.push_back(check("marginal_sum", worst_sum <= 1e-9,
                             "worst |sum - s| = " + fmt(worst_sum)));
  rep.checks.push_back(check("nestedness", nested_ok, "selection monotone in sorted order"));
  return rep;
}

SuiteReport suite_deterministic(std::uint64_t seed) {
  SuiteReport rep{"deterministic", {}};
  RngStream rs(seed, 0);
  long violations = 0;
  const long trials = 10000;
  for (long t = 0; t < trials; ++t) {
    const int d = 4 + static_cast<int>(rs.uniform() * 17);
    const int s = 1 + static_cast<int>(rs.uniform() * (d - 1));
    std::vector<double> X(static_cast<std::size_t>(d));
    for (auto& v : X) v = 4.0 * rs.normal();
    const double lambda = std::abs(4.0 * rs.normal()) + 1e-6;
    SupportPattern eta = SupportPattern::zeros(d);
    std::vector<int> idx(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) idx[static_cast<std::size_t>(i)] = i;
    for (int i = 0; i < s; ++i) {
      const int pick = i + static_cast<int>(rs.uniform() * (d - i));
      std::swap(idx[static_cast<std::size_t>(i)], idx[static_cast<std::size_t>(pick)]);
      eta.bits[static_cast<std::size_t>(idx[static_cast<std::size_t>(i)])] = 1;
    }
    const auto scan = scan_select_obs(X, s).pattern;
    const auto thr = threshold_select(X, lambda);
    if (hamming_distance(scan, eta) > 2 * hamming_distance(thr, eta)) ++violations;
  }
  rep.checks.push_back(check("scan_vs_threshold_factor2", violations == 0,
                             std::to_string(violations) + " violations in " +
                                 std::to_string(trials) + " draws"));
  bool ties_ok = true;
  {
    const std::vector<double> equal(4, 1.0);
    const auto r = scan_select_lr(equal, 2);
    ties_ok = r.meta.tie_flag && r.pattern == SupportPattern::leading(4, 2);
  }
  rep.checks.push_back(check("tie_breaking", ties_ok, "equal values pick smallest indices"));
  return rep;
}

SuiteReport suite_identities(std::uint64_t seed, int threads) {
  SuiteReport rep{"identities", {}};
  TwoPointModel model;
  model.spec = DistributionSpec::gaussian(2.0, 1.0);
  model.d = 20;
  model.s = 4;
  const auto [lhs, rhs] = scan_risk_identity(model, 20000, seed, threads);
  const double slack = 4.0 * std::sqrt(lhs.stderr_ * lhs.stderr_ + rhs.stderr_ * rhs.stderr_);
  rep.checks.push_back(check("scan_risk_identity",
                             std::abs(lhs.mean - rhs.mean) <= slack,
                             "lhs " + fmt(lhs.mean) + " rhs " + fmt(rhs.mean) + " slack " +
                                 fmt(slack)));
  const auto hr = estimate_hamming_risk(model, make_scan_selector(),
                                        SupportPattern::leading(model.d, model.s), 20000, seed,
                                        threads);
  const auto wr = estimate_wrong_recovery(model, make_scan_selector(),
                                          SupportPattern::leading(model.d, model.s), 20000, seed,
                                          threads);
  rep.checks.push_back(check("wrong_recovery_below_hamming", wr.mean <= hr.mean,
                             "wr " + fmt(wr.mean) + " <= hamming " + fmt(hr.mean)));
  return rep;
}

SuiteReport suite_chi2(std::uint64_t seed) {
  SuiteReport rep{"chi2", {}};
  bool lower_ok = true, noncentral_ok = true;
  std::ostringstream b5;
  const long n = 100000;
  for (int k : {1, 4, 16})
    for (double x : {1.0, 2.0}) {
      const auto t0 = chi_square_tail_thresholds(k, x);
      const auto t2 = chi_square_tail_thresholds(k, x, 2.0);
      long below = 0, above0 = 0, above_nc = 0;
      RngStream rs(seed, (static_cast<std::uint64_t>(k) << 8) | static_cast<std::uint64_t>(x));
      for (long i = 0; i < n; ++i) {
        double c = 0.0, cnc = 0.0;
        for (int j = 0; j < k; ++j) {
          const double z = rs.normal();
          c += z * z;
          const double znc = j == 0 ? z + 2.0 : z;
          cnc += znc * znc;
        }
        below += c <= t0.lower_dev;
        above0 += c >= t0.upper_dev_central;
        above_nc += cnc >= t2.upper_dev_noncentral;
      }
      const double target = std::exp(-x);
      const double se = std::sqrt(target * (1.0 - target) / n);
      if (static_cast<double>(below) / n > target + 3.0 * se) lower_ok = false;
      if (static_cast<double>(above_nc) / n > target + 3.0 * se) noncentral_ok = false;
      b5 << " k=" << k << ",x=" << x << ":" << fmt(static_cast<double>(above0) / n);
    }
  rep.checks.push_back(check("lower_tail", lower_ok, "P(chi <= k - 2 sqrt(kx)) <= e^{-x}"));
  rep.checks.push_back(check("noncentral_upper_tail", noncentral_ok,
                             "P(Z >= k + B^2 + 2 sqrt((k+2B^2)x) + 2x) <= e^{-x}, B=2"));
  rep.checks.push_back(check("central_upper_tail_report", true,
                             "reported only, empirical P(chi >= k + 4 max(x, sqrt(kx))):" +
                                 b5.str()));
  return rep;
}

SuiteReport suite_counterexamples() {
  SuiteReport rep{"counterexamples", {}};
  // Claimed strict inequality e_s(R) > R_(s) * e_{s-1}(R) fails at R=(3,2,1), s=2.
  const std::vector<double> rest{3.0, 2.0, 1.0};
  const double lhs = brute_force_elem_sym(rest, 2);
  const double rhs = 2.0 * brute_force_elem_sym(rest, 1);
  rep.checks.push_back(check("product_bound_fails", lhs == 11.0 && rhs == 12.0 && lhs < rhs,
                             "lhs " + fmt(lhs) + " rhs " + fmt(rhs)));
  const std::vector<double> L{1.9, 3.0, 2.0, 1.0};
  std::vector<double> logL(L.size());
  for (std::size_t i = 0; i < L.size(); ++i) logL[i] = std::log(L[i]);
  const auto fast = bayes_select(logL, 2);
  const auto bf = bayes_select_bruteforce(L, 2);
  const auto top2 = scan_select_lr(logL, 2).pattern;
  const bool support_ok = fast.support() == std::vector<int>{0, 1, 2} && fast == bf;
  rep.checks.push_back(check("containment_fails", support_ok && !(fast == top2),
                             "posterior support {1,2,3} vs top-2 {2,3} (1-based)"));
  return rep;
}

}  // namespace

std::vector<std::string> verify_suite_names() {
  return {"sympoly", "bayes", "deterministic", "identities", "chi2", "counterexamples"};
}

SuiteReport run_verify_suite(const std::string& suite, std::uint64_t seed, int threads) {
  if (suite == "sympoly") return suite_sympoly(seed);
  if (suite == "bayes") return suite_bayes(seed);
  if (suite == "deterministic") return suite_deterministic(seed);
  if (suite == "identities") return suite_identities(seed, threads);
  if (suite == "chi2") return suite_chi2(seed);
  if (suite == "counterexamples") return suite_counterexamples();
  throw std::invalid_argument("run_verify_suite: unknown suite '" + suite + "'");
}

}  // namespace hamselect
