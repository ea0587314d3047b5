#include "hamselect/risklab.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "hamselect/special.hpp"

namespace hamselect {

std::string to_string(RiskKind kind) {
  return kind == RiskKind::Hamming ? "hamming" : "wrong_recovery";
}

namespace {

// Stream purposes keep the primary draws and any auxiliary draws of one
// estimator on disjoint counter ranges.
constexpr std::uint64_t kPrimaryStream = 0;
constexpr std::uint64_t kSecondaryStream = 1;

std::uint64_t stream_index(std::uint64_t purpose, long rep) {
  return (purpose << 48) | static_cast<std::uint64_t>(rep);
}

// Runs fn for each replication index, possibly across threads, and returns
// per-replication values in index order.
std::vector<double> run_replications(long reps, int threads,
                                     const std::function<double(long, RngStream&)>& fn,
                                     std::uint64_t seed, std::uint64_t purpose) {
  if (reps < 1) throw std::invalid_argument("run_replications: reps >= 1 required");
  if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
  if (threads < 1) threads = 1;
  threads = static_cast<int>(std::min<long>(threads, reps));
  std::vector<double> values(static_cast<std::size_t>(reps));
  auto worker = [&](long begin, long end) {
    for (long r = begin; r < end; ++r) {
      RngStream rs(seed, stream_index(purpose, r));
      values[static_cast<std::size_t>(r)] = fn(r, rs);
    }
  };
  if (threads == 1) {
    worker(0, reps);
  } else {
    std::vector<std::thread> pool;
    const long chunk = (reps + threads - 1) / threads;
    for (int t = 0; t < threads; ++t)
      pool.emplace_back(worker, t * chunk, std::min<long>(reps, (t + 1) * chunk));
    for (auto& th : pool) th.join();
  }
  return values;
}

RiskEstimate summarize(const std::vector<double>& values, std::uint64_t seed, RiskKind kind) {
  RiskEstimate est;
  est.reps = static_cast<long>(values.size());
  est.master_seed = seed;
  est.kind = kind;
  double sum = 0.0;
  for (double v : values) sum += v;
  est.mean = sum / est.reps;
  if (est.reps > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - est.mean) * (v - est.mean);
    est.stderr_ = std::sqrt(ss / (est.reps - 1)) / std::sqrt(static_cast<double>(est.reps));
  }
  return est;
}

std::vector<double> draw_observations(const TwoPointModel& model, const SupportPattern& truth,
                                      RngStream& rs) {
  std::vector<double> x(static_cast<std::size_t>(model.d));
  for (int j = 0; j < model.d; ++j)
    x[static_cast<std::size_t>(j)] =
        sample(model.spec, truth.bits[static_cast<std::size_t>(j)] ? Side::Alt : Side::Null, rs);
  return x;
}

void check_dims(const TwoPointModel& model, const SupportPattern& truth) {
  model.validate();
  if (truth.size() != model.d)
    throw std::invalid_argument("risklab: truth length does not match model dimension");
}

}  // namespace

NamedSelector make_scan_selector() {
  return {"scan", [](const TwoPointModel& m, std::span<const double> x) {
            return scan_select_obs(x, m.s).pattern;
          }};
}

NamedSelector make_separable_selector() {
  return {"separable",
          [](const TwoPointModel& m, std::span<const double> x) { return separable_select(m, x); }};
}

NamedSelector make_threshold_selector(double lambda) {
  return {"threshold", [lambda](const TwoPointModel&, std::span<const double> x) {
            return threshold_select(x, lambda);
          }};
}

NamedSelector make_bayes_selector() {
  return {"bayes", [](const TwoPointModel& m, std::span<const double> x) {
            std::vector<double> logL(x.size());
            for (std::size_t j = 0; j < x.size(); ++j) logL[j] = log_lr(m.spec, x[j]);
            return m.s == 1 ? bayes_select_s1(logL) : bayes_select(logL, m.s);
          }};
}

RiskEstimate estimate_hamming_risk(const TwoPointModel& model, const NamedSelector& selector,
                                   const SupportPattern& truth, long reps, std::uint64_t seed,
                                   int threads) {
  check_dims(model, truth);
  const auto values = run_replications(
      reps, threads,
      [&](long, RngStream& rs) {
        const auto x = draw_observations(model, truth, rs);
        return static_cast<double>(hamming_distance(selector.fn(model, x), truth));
      },
      seed, kPrimaryStream);
  return summarize(values, seed, RiskKind::Hamming);
}

RiskEstimate estimate_wrong_recovery(const TwoPointModel& model, const NamedSelector& selector,
                                     const SupportPattern& truth, long reps, std::uint64_t seed,
                                     int threads) {
  check_dims(model, truth);
  const auto values = run_replications(
      reps, threads,
      [&](long, RngStream& rs) {
        const auto x = draw_observations(model, truth, rs);
        return hamming_distance(selector.fn(model, x), truth) >= 1 ? 1.0 : 0.0;
      },
      seed, kPrimaryStream);
  return summarize(values, seed, RiskKind::WrongRecovery);
}

std::pair<RiskEstimate, RiskEstimate> scan_risk_identity(const TwoPointModel& model, long reps,
                                                         std::uint64_t seed, int threads) {
  model.validate();
  const auto truth = SupportPattern::leading(model.d, model.s);
  const RiskEstimate lhs = estimate_hamming_risk(model, make_scan_selector(), truth, reps, seed, threads);

  // Secondary streams: empirical frequency of {L_1 not among the top-s}.
  const auto values = run_replications(
      reps, threads,
      [&](long, RngStream& rs) {
        const auto x = draw_observations(model, truth, rs);
        double lr0 = log_lr(model.spec, x[0]);
        int above = 0;
        for (int j = 1; j < model.d; ++j)
          above += log_lr(model.spec, x[static_cast<std::size_t>(j)]) > lr0;
        return above >= model.s ? 1.0 : 0.0;
      },
      seed, kSecondaryStream);
  RiskEstimate rhs = summarize(values, seed, RiskKind::Hamming);
  rhs.mean *= 2.0 * model.s;
  rhs.stderr_ *= 2.0 * model.s;
  return {lhs, rhs};
}

RiskEstimate separation_event_prob(const TwoPointModel& model, long reps, std::uint64_t seed,
                                   int threads) {
  model.validate();
  const auto truth = SupportPattern::leading(model.d, model.s);
  const auto values = run_replications(
      reps, threads,
      [&](long, RngStream& rs) {
        const auto x = draw_observations(model, truth, rs);
        const double min_sig = *std::min_element(x.begin(), x.begin() + model.s);
        const double max_noise = *std::max_element(x.begin() + model.s, x.end());
        return min_sig <= max_noise ? 1.0 : 0.0;
      },
      seed, kPrimaryStream);
  return summarize(values, seed, RiskKind::WrongRecovery);
}

GroupObservation sample_group_observation(std::span<const double> theta_norms, int k, double sigma,
                                          std::uint64_t seed) {
  if (k < 1) throw std::invalid_argument("sample_group_observation: k >= 1 required");
  for (double n : theta_norms)
    if (n < 0.0) throw std::invalid_argument("sample_group_observation: norms must be >= 0");
  GroupObservation obs;
  obs.k = k;
  obs.d = static_cast<int>(theta_norms.size());
  obs.data.resize(static_cast<std::size_t>(k) * obs.d);
  RngStream rs(seed, kPrimaryStream);
  for (int j = 0; j < obs.d; ++j) {
    for (int i = 0; i < k; ++i) {
      double v = sigma * rs.normal();
      if (i == 0) v += theta_norms[static_cast<std::size_t>(j)];
      obs.data[static_cast<std::size_t>(j) * k + i] = v;
    }
  }
  return obs;
}

std::vector<double> column_norms(const GroupObservation& obs) {
  std::vector<double> out(static_cast<std::size_t>(obs.d));
  for (int j = 0; j < obs.d; ++j) {
    double acc = 0.0;
    for (int i = 0; i < obs.k; ++i) {
      const double v = obs.at(i, j);
      acc += v * v;
    }
    out[static_cast<std::size_t>(j)] = acc;
  }
  return out;
}

std::uint64_t sweep_cell_seed(std::uint64_t master_seed, std::size_t cell_index) {
  return derive_stream_seed(master_seed, static_cast<std::uint64_t>(cell_index));
}

NamedSelector resolve_selector(const std::string& name, const TwoPointModel& model) {
  if (name == "scan") return make_scan_selector();
  if (name == "bayes") return make_bayes_selector();
  if (name == "separable") return make_separable_selector();
  if (name == "threshold") {
    double lambda;
    if (model.spec.family == Family::ChiSquarePair) {
      lambda = group_threshold(model.spec.sigma, model.spec.k, std::log(static_cast<double>(model.d)));
    } else {
      const double nu = model.spec.family == Family::GaussianShift ? 2.0 : model.spec.nu;
      lambda = lighttail_threshold(nu, model.spec.sigma, static_cast<double>(model.d - model.s));
    }
    return make_threshold_selector(lambda);
  }
  throw std::invalid_argument("resolve_selector: unknown selector '" + name + "'");
}

std::vector<SweepRow> phase_transition_sweep(const SweepConfig& config) {
  if (config.d_grid.empty() || config.s_grid.empty() || config.a_grid.empty())
    throw std::invalid_argument("phase_transition_sweep: empty grid");
  if (config.reps < 100) throw std::invalid_argument("phase_transition_sweep: reps >= 100 required");
  if (config.selectors.empty() || config.risk_kinds.empty())
    throw std::invalid_argument("phase_transition_sweep: selectors and risk kinds required");
  std::vector<int> k_grid = config.k_grid;
  if (config.family != Family::ChiSquarePair || k_grid.empty()) k_grid = {std::max(1, k_grid.empty() ? 1 : k_grid[0])};

  std::vector<SweepRow> rows;
  std::size_t cell_index = 0;
  for (int d : config.d_grid)
    for (int s : config.s_grid)
      for (int k : k_grid)
        for (double a : config.a_grid) {
          const std::uint64_t cell_seed = sweep_cell_seed(config.master_seed, cell_index);
          ++cell_index;
          for (const auto& sel_name : config.selectors)
            for (RiskKind kind : config.risk_kinds) {
              SweepRow row;
              row.d = d;
              row.s = s;
              row.k = k;
              row.a = a;
              row.selector = sel_name;
              row.kind = kind;
              try {
                TwoPointModel model;
                switch (config.family) {
                  case Family::GaussianShift:
                    model.spec = DistributionSpec::gaussian(a, config.sigma);
                    break;
                  case Family::SubbotinShift:
                    model.spec = DistributionSpec::subbotin(config.nu, a, config.sigma);
                    break;
                  case Family::ChiSquarePair:
                    model.spec = DistributionSpec::chi_square_pair(k, a, config.sigma);
                    break;
                }
                model.d = d;
                model.s = s;
                model.diagnostic_null = config.diagnostic_null;
                const auto truth = SupportPattern::leading(d, s);
                const auto selector = resolve_selector(sel_name, model);
                row.estimate = kind == RiskKind::Hamming
                                   ? estimate_hamming_risk(model, selector, truth, config.reps,
                                                           cell_seed, config.threads)
                                   : estimate_wrong_recovery(model, selector, truth, config.reps,
                                                             cell_seed, config.threads);
              } catch (const std::exception& e) {
                row.error = e.what();
              }
              rows.push_back(std::move(row));
            }
        }
  return rows;
}

}  // namespace hamselect
