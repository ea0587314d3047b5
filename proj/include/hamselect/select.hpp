#ifndef HAMSELECT_SELECT_HPP
#define HAMSELECT_SELECT_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "hamselect/model.hpp"

namespace hamselect {

// Binary selection/truth vector of length d.
struct SupportPattern {
  std::vector<std::uint8_t> bits;

  int size() const { return static_cast<int>(bits.size()); }
  int count() const;
  std::vector<int> support() const;  // indices with bit set
  bool operator==(const SupportPattern& other) const = default;

  static SupportPattern zeros(int d);
  // e(s) = (1,...,1,0,...,0)
  static SupportPattern leading(int d, int s);
};

// Hamming distance between two patterns of equal length.
int hamming_distance(const SupportPattern& a, const SupportPattern& b);

struct SelectorOutputMeta {
  int selected_count = 0;
  bool tie_flag = false;  // a decision-relevant comparison was exactly equal
};

struct SelectResult {
  SupportPattern pattern;
  SelectorOutputMeta meta;
};

// Best separable selector: bit_j = 1 iff s f1(X_j) >= (d-s) f0(X_j),
// evaluated as log_lr(X_j) >= log((d-s)/s).
SupportPattern separable_select(const TwoPointModel& model, std::span<const double> X);

// Scan selector: exactly s bits, at the indices of the s largest values.
// Ties broken by smaller index first.
SelectResult scan_select_lr(std::span<const double> logL, int s);
SelectResult scan_select_obs(std::span<const double> X, int s);

// Exact Bayes/minimax selector for s = 1: bit_j = 1 iff L_j >= sum_{k != j} L_k.
SupportPattern bayes_select_s1(std::span<const double> logL);

// Exact Bayes/minimax selector for s >= 2:
// bit_j = 1 iff L_j e_{s-1}(L_{-j}) >= e_s(L_{-j}), in log domain.
SupportPattern bayes_select(std::span<const double> logL, int s);

// Posterior marginal under the uniform prior on size-s supports:
// p_j = L_j e_{s-1}(L_{-j}) / (L_j e_{s-1}(L_{-j}) + e_s(L_{-j})).
// The marginals sum to s; bayes_select thresholds them at 1/2.
std::vector<double> bayes_posterior_marginals(std::span<const double> logL, int s);

// Same decision rule in direct arithmetic; oracle, refused for d > 20.
SupportPattern bayes_select_bruteforce(std::span<const double> L, int s);

// bit_j = 1 iff X_j > lambda (strict).
SupportPattern threshold_select(std::span<const double> X, double lambda);

// lambda = sigma (nu log x + nu log log x)^{1/nu}, requires x > e.
double lighttail_threshold(double nu, double sigma, double x);

// t = sigma^2 (k + 4 log_factor + 4 sqrt(k log_factor)).
double group_threshold(double sigma, int k, double log_factor);

}  // namespace hamselect

#endif
