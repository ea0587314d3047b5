#ifndef HAMSELECT_RISKLAB_HPP
#define HAMSELECT_RISKLAB_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "hamselect/select.hpp"

namespace hamselect {

enum class RiskKind { Hamming, WrongRecovery };

std::string to_string(RiskKind kind);

struct RiskEstimate {
  double mean = 0.0;
  double stderr_ = 0.0;  // sample std / sqrt(reps)
  long reps = 0;
  std::uint64_t master_seed = 0;
  RiskKind kind = RiskKind::Hamming;
};

// A named selector mapping (model, observations) to a pattern.
struct NamedSelector {
  std::string name;
  std::function<SupportPattern(const TwoPointModel&, std::span<const double>)> fn;
};

NamedSelector make_scan_selector();
NamedSelector make_separable_selector();
NamedSelector make_threshold_selector(double lambda);
// Routes s = 1 to the sum-comparison rule and s >= 2 to the elementary
// symmetric polynomial rule, both on log-likelihood ratios.
NamedSelector make_bayes_selector();

// Monte Carlo expected Hamming risk of `selector` at `truth`, over `reps`
// independent draws with per-replication derived streams. Deterministic for
// fixed (seed, reps) regardless of thread count.
RiskEstimate estimate_hamming_risk(const TwoPointModel& model, const NamedSelector& selector,
                                   const SupportPattern& truth, long reps, std::uint64_t seed,
                                   int threads = 1);

// Empirical probability that the selected support differs from the truth.
// On the same seed the draws pair with estimate_hamming_risk replication by
// replication, so wrong_recovery.mean <= hamming.mean holds exactly.
RiskEstimate estimate_wrong_recovery(const TwoPointModel& model, const NamedSelector& selector,
                                     const SupportPattern& truth, long reps, std::uint64_t seed,
                                     int threads = 1);

// lhs: Hamming risk of the scan selector at truth e(s).
// rhs: 2s times the empirical frequency of {L_1 not among the top-s ratios}
// under e(s), on independent streams. Equal in expectation for continuous models.
std::pair<RiskEstimate, RiskEstimate> scan_risk_identity(const TwoPointModel& model, long reps,
                                                         std::uint64_t seed, int threads = 1);

// Empirical probability of { min_{j<=s} X_j <= max_{j>s} X_j } under e(s).
RiskEstimate separation_event_prob(const TwoPointModel& model, long reps, std::uint64_t seed,
                                   int threads = 1);

// k x d matrix observation of the group model, stored column-major.
struct GroupObservation {
  int k = 0;
  int d = 0;
  std::vector<double> data;  // column j at data[j*k .. j*k+k)

  double at(int i, int j) const { return data[static_cast<std::size_t>(j) * k + i]; }
};

// Column j is theta_norms[j] * e_1 + sigma * (standard normal vector);
// rotation invariance makes the canonical direction w.l.o.g.
GroupObservation sample_group_observation(std::span<const double> theta_norms, int k, double sigma,
                                          std::uint64_t seed);

// Exact squared Euclidean column norms.
std::vector<double> column_norms(const GroupObservation& obs);

struct SweepConfig {
  Family family = Family::GaussianShift;
  double sigma = 1.0;
  double nu = 2.0;
  std::vector<int> d_grid;
  std::vector<int> s_grid;
  std::vector<int> k_grid;     // ChiSquarePair only; otherwise ignored
  std::vector<double> a_grid;  // amplitude a (use sqrt for a^2-parameterized input)
  std::vector<std::string> selectors;
  std::vector<RiskKind> risk_kinds;
  long reps = 100;
  std::uint64_t master_seed = 0;
  int threads = 1;
  bool diagnostic_null = false;
};

struct SweepRow {
  int d = 0;
  int s = 0;
  int k = 0;
  double a = 0.0;
  std::string selector;
  RiskKind kind = RiskKind::Hamming;
  RiskEstimate estimate;
  std::string error;  // nonempty when the cell failed
};

// Per-cell seed, derived from the master seed and the flattened cell index.
std::uint64_t sweep_cell_seed(std::uint64_t master_seed, std::size_t cell_index);

// Full factorial sweep over d x s x k x a in deterministic grid order.
// Cell errors are recorded in-row; the sweep continues.
std::vector<SweepRow> phase_transition_sweep(const SweepConfig& config);

// Selector factory by name: scan | bayes | separable | threshold.
// "threshold" resolves the family-specific recovery threshold for the cell.
NamedSelector resolve_selector(const std::string& name, const TwoPointModel& model);

}  // namespace hamselect

#endif
