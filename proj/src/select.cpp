#include "hamselect/select.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "hamselect/special.hpp"
#include "hamselect/sympoly.hpp"

namespace hamselect {

int SupportPattern::count() const {
  int c = 0;
  for (auto b : bits) c += b;
  return c;
}

std::vector<int> SupportPattern::support() const {
  std::vector<int> idx;
  for (int i = 0; i < size(); ++i)
    if (bits[static_cast<std::size_t>(i)]) idx.push_back(i);
  return idx;
}

SupportPattern SupportPattern::zeros(int d) {
  return SupportPattern{std::vector<std::uint8_t>(static_cast<std::size_t>(d), 0)};
}

SupportPattern SupportPattern::leading(int d, int s) {
  SupportPattern p = zeros(d);
  for (int i = 0; i < s; ++i) p.bits[static_cast<std::size_t>(i)] = 1;
  return p;
}

int hamming_distance(const SupportPattern& a, const SupportPattern& b) {
  if (a.size() != b.size()) throw std::invalid_argument("hamming_distance: length mismatch");
  int dist = 0;
  for (int i = 0; i < a.size(); ++i)
    dist += a.bits[static_cast<std::size_t>(i)] != b.bits[static_cast<std::size_t>(i)];
  return dist;
}

SupportPattern separable_select(const TwoPointModel& model, std::span<const double> X) {
  if (static_cast<int>(X.size()) != model.d)
    throw std::invalid_argument("separable_select: length(X) != d");
  model.validate();
  const double thr = std::log(static_cast<double>(model.d - model.s) / model.s);
  SupportPattern p = SupportPattern::zeros(model.d);
  for (int j = 0; j < model.d; ++j)
    p.bits[static_cast<std::size_t>(j)] = log_lr(model.spec, X[static_cast<std::size_t>(j)]) >= thr;
  return p;
}

namespace {

SelectResult top_s(std::span<const double> values, int s) {
  const int d = static_cast<int>(values.size());
  if (s < 1 || s >= d) throw std::domain_error("scan_select: 1 <= s < d required");
  std::vector<int> order(static_cast<std::size_t>(d));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    const double va = values[static_cast<std::size_t>(a)];
    const double vb = values[static_cast<std::size_t>(b)];
    if (va != vb) return va > vb;
    return a < b;  // smaller index wins ties
  });
  SelectResult r;
  r.pattern = SupportPattern::zeros(d);
  for (int i = 0; i < s; ++i) r.pattern.bits[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])] = 1;
  r.meta.selected_count = s;
  r.meta.tie_flag = values[static_cast<std::size_t>(order[static_cast<std::size_t>(s - 1)])] ==
                    values[static_cast<std::size_t>(order[static_cast<std::size_t>(s)])];
  return r;
}

}  // namespace

SelectResult scan_select_lr(std::span<const double> logL, int s) { return top_s(logL, s); }

SelectResult scan_select_obs(std::span<const double> X, int s) { return top_s(X, s); }

SupportPattern bayes_select_s1(std::span<const double> logL) {
  const int d = static_cast<int>(logL.size());
  if (d < 2) throw std::domain_error("bayes_select_s1: d >= 2 required");
  SupportPattern p = SupportPattern::zeros(d);
  for (int j = 0; j < d; ++j) {
    double rest = kNegInf;
    for (int i = 0; i < d; ++i)
      if (i != j) rest = log_sum_exp(rest, logL[static_cast<std::size_t>(i)]);
    p.bits[static_cast<std::size_t>(j)] = logL[static_cast<std::size_t>(j)] >= rest;
  }
  return p;
}

namespace {

// For each j, log e_{s-1}(L_{-j}) and log e_s(L_{-j}) via prefix/suffix tables
// merged by e_m(A u B) = sum_u e_u(A) e_{m-u}(B). Additions only, no
// down-dating, and O(d s) total instead of a fresh O(d s) pass per j.
struct ExcludedPair {
  std::vector<double> log_e_sm1;  // per j
  std::vector<double> log_e_s;    // per j
};

ExcludedPair excluded_elem_syms(std::span<const double> logL, int s) {
  const int d = static_cast<int>(logL.size());
  const int w = s + 1;
  const auto at = [w](std::vector<double>& t, int i, int m) -> double& {
    return t[static_cast<std::size_t>(i) * w + m];
  };
  // pre row i: degrees 0..s of logL[0..i); suf row i: of logL[i..d).
  std::vector<double> pre(static_cast<std::size_t>(d + 1) * w, kNegInf);
  std::vector<double> suf(static_cast<std::size_t>(d + 1) * w, kNegInf);
  at(pre, 0, 0) = 0.0;
  for (int i = 1; i <= d; ++i) {
    const double l = logL[static_cast<std::size_t>(i - 1)];
    at(pre, i, 0) = 0.0;
    for (int m = 1; m <= s; ++m)
      at(pre, i, m) = log_sum_exp(at(pre, i - 1, m), l + at(pre, i - 1, m - 1));
  }
  at(suf, d, 0) = 0.0;
  for (int i = d - 1; i >= 0; --i) {
    const double l = logL[static_cast<std::size_t>(i)];
    at(suf, i, 0) = 0.0;
    for (int m = 1; m <= s; ++m)
      at(suf, i, m) = log_sum_exp(at(suf, i + 1, m), l + at(suf, i + 1, m - 1));
  }
  ExcludedPair out;
  out.log_e_sm1.assign(static_cast<std::size_t>(d), kNegInf);
  out.log_e_s.assign(static_cast<std::size_t>(d), kNegInf);
  for (int j = 0; j < d; ++j) {
    for (int m : {s - 1, s}) {
      double acc = kNegInf;
      for (int u = std::max(0, m - (d - 1 - j)); u <= std::min(m, j); ++u)
        acc = log_sum_exp(acc, at(pre, j, u) + at(suf, j + 1, m - u));
      (m == s ? out.log_e_s : out.log_e_sm1)[static_cast<std::size_t>(j)] = acc;
    }
  }
  return out;
}

}  // namespace

SupportPattern bayes_select(std::span<const double> logL, int s) {
  const int d = static_cast<int>(logL.size());
  if (s < 2 || s >= d) throw std::domain_error("bayes_select: 2 <= s < d required");
  const ExcludedPair ex = excluded_elem_syms(logL, s);
  SupportPattern p = SupportPattern::zeros(d);
  for (int j = 0; j < d; ++j) {
    const double lhs = logL[static_cast<std::size_t>(j)] + ex.log_e_sm1[static_cast<std::size_t>(j)];
    p.bits[static_cast<std::size_t>(j)] = lhs >= ex.log_e_s[static_cast<std::size_t>(j)];
  }
  return p;
}

std::vector<double> bayes_posterior_marginals(std::span<const double> logL, int s) {
  const int d = static_cast<int>(logL.size());
  if (s < 2 || s >= d) throw std::domain_error("bayes_posterior_marginals: 2 <= s < d required");
  const ExcludedPair ex = excluded_elem_syms(logL, s);
  std::vector<double> p(static_cast<std::size_t>(d));
  for (int j = 0; j < d; ++j) {
    const double lhs = logL[static_cast<std::size_t>(j)] + ex.log_e_sm1[static_cast<std::size_t>(j)];
    p[static_cast<std::size_t>(j)] =
        std::exp(lhs - log_sum_exp(lhs, ex.log_e_s[static_cast<std::size_t>(j)]));
  }
  return p;
}

SupportPattern bayes_select_bruteforce(std::span<const double> L, int s) {
  const int d = static_cast<int>(L.size());
  if (d > 20) throw std::domain_error("bayes_select_bruteforce: refused for d > 20");
  if (s < 2 || s >= d) throw std::domain_error("bayes_select_bruteforce: 2 <= s < d required");
  SupportPattern p = SupportPattern::zeros(d);
  for (int j = 0; j < d; ++j) {
    std::vector<double> rest;
    for (int i = 0; i < d; ++i)
      if (i != j) rest.push_back(L[static_cast<std::size_t>(i)]);
    const double lhs = L[static_cast<std::size_t>(j)] * brute_force_elem_sym(rest, s - 1);
    const double rhs = brute_force_elem_sym(rest, s);
    p.bits[static_cast<std::size_t>(j)] = lhs >= rhs;
  }
  return p;
}

SupportPattern threshold_select(std::span<const double> X, double lambda) {
  SupportPattern p = SupportPattern::zeros(static_cast<int>(X.size()));
  for (std::size_t j = 0; j < X.size(); ++j) p.bits[j] = X[j] > lambda;
  return p;
}

double lighttail_threshold(double nu, double sigma, double x) {
  if (!(nu >= 1.0)) throw std::domain_error("lighttail_threshold: nu >= 1 required");
  if (!(sigma > 0.0)) throw std::domain_error("lighttail_threshold: sigma > 0 required");
  if (!(x > std::exp(1.0))) throw std::domain_error("lighttail_threshold: x > e required");
  return sigma * std::pow(nu * std::log(x) + nu * std::log(std::log(x)), 1.0 / nu);
}

double group_threshold(double sigma, int k, double log_factor) {
  if (k < 1) throw std::domain_error("group_threshold: k >= 1 required");
  if (!(log_factor > 0.0)) throw std::domain_error("group_threshold: log_factor > 0 required");
  return sigma * sigma * (k + 4.0 * log_factor + 4.0 * std::sqrt(k * log_factor));
}

}  // namespace hamselect
