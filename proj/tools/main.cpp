#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "hamselect/bounds.hpp"
#include "hamselect/risklab.hpp"
#include "hamselect/verify.hpp"

using nlohmann::json;
using namespace hamselect;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitConfig = 2;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void reject_unknown_keys(const json& cfg, const std::set<std::string>& allowed) {
  for (const auto& [key, value] : cfg.items()) {
    (void)value;
    if (!allowed.count(key)) throw ConfigError("unknown config key '" + key + "'");
  }
}

json load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  json cfg;
  try {
    in >> cfg;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config parse error: ") + e.what());
  }
  if (!cfg.is_object()) throw ConfigError("config root must be a JSON object");
  return cfg;
}

Family parse_family(const json& cfg) {
  const std::string f = cfg.value("family", "gaussian");
  if (f == "gaussian") return Family::GaussianShift;
  if (f == "subbotin") return Family::SubbotinShift;
  if (f == "chi_square_pair") return Family::ChiSquarePair;
  throw ConfigError("unknown family '" + f + "'");
}

// Amplitude and scale carry explicit units: a vs a2, sigma vs sigma2.
double parse_amplitude(const json& cfg, bool required = true) {
  const bool has_a = cfg.contains("a"), has_a2 = cfg.contains("a2");
  if (has_a && has_a2) throw ConfigError("give 'a' or 'a2', not both");
  if (has_a) return cfg.at("a").get<double>();
  if (has_a2) {
    const double a2 = cfg.at("a2").get<double>();
    if (a2 < 0.0) throw ConfigError("'a2' must be >= 0");
    return std::sqrt(a2);
  }
  if (required) throw ConfigError("missing amplitude: 'a' or 'a2'");
  return 0.0;
}

double parse_sigma(const json& cfg) {
  const bool has_s = cfg.contains("sigma"), has_s2 = cfg.contains("sigma2");
  if (has_s && has_s2) throw ConfigError("give 'sigma' or 'sigma2', not both");
  if (has_s) return cfg.at("sigma").get<double>();
  if (has_s2) {
    const double s2 = cfg.at("sigma2").get<double>();
    if (s2 <= 0.0) throw ConfigError("'sigma2' must be > 0");
    return std::sqrt(s2);
  }
  return 1.0;
}

TwoPointModel parse_model(const json& cfg) {
  TwoPointModel m;
  const Family family = parse_family(cfg);
  const bool diag = cfg.value("diagnostic_null", false);
  const double a = parse_amplitude(cfg, !diag);
  const double sigma = parse_sigma(cfg);
  try {
    switch (family) {
      case Family::GaussianShift:
        m.spec = DistributionSpec::gaussian(a, sigma);
        break;
      case Family::SubbotinShift:
        m.spec = DistributionSpec::subbotin(cfg.value("nu", 2.0), a, sigma);
        break;
      case Family::ChiSquarePair:
        m.spec = DistributionSpec::chi_square_pair(cfg.value("k", 1), a, sigma);
        break;
    }
    m.d = cfg.at("d").get<int>();
    m.s = cfg.at("s").get<int>();
    m.diagnostic_null = diag;
    m.validate();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config error: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("config error: ") + e.what());
  }
  return m;
}

std::string family_name(Family f) {
  switch (f) {
    case Family::GaussianShift: return "gaussian";
    case Family::SubbotinShift: return "subbotin";
    case Family::ChiSquarePair: return "chi_square_pair";
  }
  return "?";
}

RiskKind parse_risk_kind(const std::string& name) {
  if (name == "hamming") return RiskKind::Hamming;
  if (name == "wrong_recovery") return RiskKind::WrongRecovery;
  throw ConfigError("unknown risk kind '" + name + "'");
}

// Table rows shared by the csv and json writers.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;  // cells already formatted
};

void emit(const Table& table, const std::string& out_path, const std::string& format) {
  std::ostringstream os;
  if (format == "csv") {
    for (std::size_t i = 0; i < table.header.size(); ++i)
      os << (i ? "," : "") << table.header[i];
    os << "\n";
    for (const auto& row : table.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << row[i];
      os << "\n";
    }
  } else if (format == "json") {
    json arr = json::array();
    for (const auto& row : table.rows) {
      json rec = json::object();
      for (std::size_t i = 0; i < row.size(); ++i) rec[table.header[i]] = row[i];
      arr.push_back(rec);
    }
    os << arr.dump(2) << "\n";
  } else {
    throw ConfigError("unknown format '" + format + "'");
  }
  if (out_path.empty()) {
    std::cout << os.str();
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file '" + out_path + "'");
    out << os.str();
  }
}

struct CommonFlags {
  std::string config_path;
  std::string out_path;
  std::string format = "csv";
  std::optional<std::uint64_t> seed;
  std::optional<long> reps;
  std::optional<int> threads;
};

void add_common(CLI::App* sub, CommonFlags& flags, bool config_required = true) {
  auto* opt = sub->add_option("--config", flags.config_path, "JSON config file");
  if (config_required) opt->required();
  sub->add_option("--out", flags.out_path, "output file (stdout if omitted)");
  sub->add_option("--format", flags.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--seed", flags.seed, "master seed override");
  sub->add_option("--reps", flags.reps, "replication count override");
  sub->add_option("--threads", flags.threads, "worker thread override");
}

std::uint64_t resolve_seed(const CommonFlags& flags, const json& cfg) {
  if (flags.seed) return *flags.seed;
  return cfg.value("seed", std::uint64_t{0});
}

long resolve_reps(const CommonFlags& flags, const json& cfg, long fallback) {
  if (flags.reps) return *flags.reps;
  return cfg.value("reps", fallback);
}

int resolve_threads(const CommonFlags& flags, const json& cfg) {
  if (flags.threads) return *flags.threads;
  if (cfg.contains("threads")) return cfg.at("threads").get<int>();
  if (const char* env = std::getenv("HAMSELECT_THREADS")) return std::atoi(env);
  return 1;
}

std::vector<std::string> model_cells(const TwoPointModel& m) {
  return {family_name(m.spec.family), std::to_string(m.d),      std::to_string(m.s),
          std::to_string(m.spec.k),   fmt17(m.spec.a),          fmt17(m.spec.sigma),
          fmt17(m.spec.nu)};
}

const std::vector<std::string> kModelHeader = {"family", "d", "s", "k", "a", "sigma", "nu"};

int run_bounds(const CommonFlags& flags) {
  const json cfg = load_config(flags.config_path);
  reject_unknown_keys(cfg, {"family", "a", "a2", "sigma", "sigma2", "nu", "k", "d", "s"});
  const TwoPointModel model = parse_model(cfg);
  const BoundsReport r = bounds_report(model);
  Table t;
  t.header = kModelHeader;
  for (const char* c : {"psi_sep", "t1", "t2", "psi_t1", "psi_t2", "minimax_lower",
                        "minimax_applicable", "block_lower", "exact_recovery_blocked"})
    t.header.push_back(c);
  auto row = model_cells(model);
  row.push_back(fmt17(r.psi_sep_value));
  row.push_back(fmt17(r.t1));
  row.push_back(r.t2 ? fmt17(*r.t2) : "nan");
  row.push_back(fmt17(r.psi_t1));
  row.push_back(fmt17(r.psi_t2));
  row.push_back(fmt17(r.minimax_lower.value));
  row.push_back(r.minimax_lower.applicable ? "true" : "false");
  row.push_back(fmt17(r.block_lower));
  row.push_back(r.exact_recovery_blocked ? "true" : "false");
  t.rows.push_back(std::move(row));
  emit(t, flags.out_path, flags.format);
  return kExitOk;
}

int run_risk(const CommonFlags& flags) {
  const json cfg = load_config(flags.config_path);
  reject_unknown_keys(cfg, {"family", "a", "a2", "sigma", "sigma2", "nu", "k", "d", "s",
                            "selector", "risk_kind", "reps", "seed", "threads",
                            "diagnostic_null"});
  const TwoPointModel model = parse_model(cfg);
  const std::string sel_name = cfg.value("selector", "scan");
  const RiskKind kind = parse_risk_kind(cfg.value("risk_kind", "hamming"));
  const std::uint64_t seed = resolve_seed(flags, cfg);
  const long reps = resolve_reps(flags, cfg, 1000);
  const int threads = resolve_threads(flags, cfg);
  NamedSelector selector;
  try {
    selector = resolve_selector(sel_name, model);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  const auto truth = SupportPattern::leading(model.d, model.s);
  const RiskEstimate est =
      kind == RiskKind::Hamming
          ? estimate_hamming_risk(model, selector, truth, reps, seed, threads)
          : estimate_wrong_recovery(model, selector, truth, reps, seed, threads);
  Table t;
  t.header = kModelHeader;
  for (const char* c : {"selector", "risk_kind", "mean", "stderr", "reps", "seed"})
    t.header.push_back(c);
  auto row = model_cells(model);
  row.push_back(sel_name);
  row.push_back(to_string(kind));
  row.push_back(fmt17(est.mean));
  row.push_back(fmt17(est.stderr_));
  row.push_back(std::to_string(est.reps));
  row.push_back(std::to_string(est.master_seed));
  t.rows.push_back(std::move(row));
  emit(t, flags.out_path, flags.format);
  return kExitOk;
}

template <typename T>
std::vector<T> required_array(const json& cfg, const std::string& key) {
  if (!cfg.contains(key) || !cfg.at(key).is_array() || cfg.at(key).empty())
    throw ConfigError("'" + key + "' must be a nonempty array");
  return cfg.at(key).get<std::vector<T>>();
}

int run_sweep(const CommonFlags& flags) {
  const json cfg = load_config(flags.config_path);
  reject_unknown_keys(cfg, {"family", "sigma", "sigma2", "nu", "d_grid", "s_grid", "k_grid",
                            "a_grid", "a2_grid", "selectors", "risk_kinds", "reps", "seed",
                            "threads", "diagnostic_null"});
  SweepConfig sc;
  sc.family = parse_family(cfg);
  sc.sigma = parse_sigma(cfg);
  sc.nu = cfg.value("nu", 2.0);
  try {
    sc.d_grid = required_array<int>(cfg, "d_grid");
    sc.s_grid = required_array<int>(cfg, "s_grid");
    if (cfg.contains("k_grid")) sc.k_grid = cfg.at("k_grid").get<std::vector<int>>();
    const bool has_a = cfg.contains("a_grid"), has_a2 = cfg.contains("a2_grid");
    if (has_a == has_a2) throw ConfigError("give exactly one of 'a_grid' or 'a2_grid'");
    if (has_a) {
      sc.a_grid = required_array<double>(cfg, "a_grid");
    } else {
      for (double a2 : required_array<double>(cfg, "a2_grid")) {
        if (a2 < 0.0) throw ConfigError("'a2_grid' entries must be >= 0");
        sc.a_grid.push_back(std::sqrt(a2));
      }
    }
    sc.selectors = required_array<std::string>(cfg, "selectors");
    for (const auto& rk : required_array<std::string>(cfg, "risk_kinds"))
      sc.risk_kinds.push_back(parse_risk_kind(rk));
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config error: ") + e.what());
  }
  sc.reps = resolve_reps(flags, cfg, 1000);
  sc.master_seed = resolve_seed(flags, cfg);
  sc.threads = resolve_threads(flags, cfg);
  sc.diagnostic_null = cfg.value("diagnostic_null", false);
  std::vector<SweepRow> rows;
  try {
    rows = phase_transition_sweep(sc);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  Table t;
  t.header = {"family", "d",    "s",      "k",      "a",    "sigma", "nu",  "selector",
              "risk_kind", "mean", "stderr", "reps", "seed", "error"};
  for (const auto& r : rows) {
    std::vector<std::string> row = {family_name(sc.family),
                                    std::to_string(r.d),
                                    std::to_string(r.s),
                                    std::to_string(r.k),
                                    fmt17(r.a),
                                    fmt17(sc.sigma),
                                    fmt17(sc.nu),
                                    r.selector,
                                    to_string(r.kind)};
    if (r.error.empty()) {
      row.push_back(fmt17(r.estimate.mean));
      row.push_back(fmt17(r.estimate.stderr_));
      row.push_back(std::to_string(r.estimate.reps));
      row.push_back(std::to_string(r.estimate.master_seed));
      row.push_back("");
    } else {
      row.insert(row.end(), {"nan", "nan", "0", "0", r.error});
    }
    t.rows.push_back(std::move(row));
  }
  emit(t, flags.out_path, flags.format);
  return kExitOk;
}

int run_verify(const CommonFlags& flags, std::vector<std::string> suites) {
  json cfg = json::object();
  if (!flags.config_path.empty()) {
    cfg = load_config(flags.config_path);
    reject_unknown_keys(cfg, {"suites", "seed", "threads"});
    if (suites.empty() && cfg.contains("suites"))
      suites = cfg.at("suites").get<std::vector<std::string>>();
  }
  if (suites.empty()) suites = verify_suite_names();
  const std::uint64_t seed = resolve_seed(flags, cfg);
  const int threads = resolve_threads(flags, cfg);
  const auto known = verify_suite_names();
  for (const auto& s : suites)
    if (std::find(known.begin(), known.end(), s) == known.end())
      throw ConfigError("unknown verify suite '" + s + "'");
  bool all_pass = true;
  json report = json::array();
  for (const auto& name : suites) {
    const SuiteReport rep = run_verify_suite(name, seed, threads);
    all_pass = all_pass && rep.passed();
    std::cout << "suite " << rep.suite << ": " << (rep.passed() ? "PASS" : "FAIL") << "\n";
    json checks = json::array();
    for (const auto& c : rep.checks) {
      std::cout << "  [" << (c.pass ? "ok" : "FAIL") << "] " << c.name << ": " << c.detail
                << "\n";
      checks.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    }
    report.push_back({{"suite", rep.suite}, {"pass", rep.passed()}, {"checks", checks}});
  }
  if (!flags.out_path.empty()) {
    std::ofstream out(flags.out_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file '" + flags.out_path + "'");
    out << report.dump(2) << "\n";
  }
  return all_pass ? kExitOk : kExitRuntime;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Minimax variable selection laboratory"};
  app.require_subcommand(1);

  CommonFlags bounds_flags, risk_flags, sweep_flags, verify_flags;
  std::vector<std::string> verify_suites;

  auto* bounds_cmd = app.add_subcommand("bounds", "closed-form risk bounds for one model");
  add_common(bounds_cmd, bounds_flags);
  auto* risk_cmd = app.add_subcommand("risk", "Monte Carlo risk of one selector at one model");
  add_common(risk_cmd, risk_flags);
  auto* sweep_cmd = app.add_subcommand("sweep", "phase-transition sweep over a parameter grid");
  add_common(sweep_cmd, sweep_flags);
  auto* verify_cmd = app.add_subcommand("verify", "run built-in verification suites");
  add_common(verify_cmd, verify_flags, false);
  verify_cmd->add_option("suites", verify_suites, "suites to run (default: all)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (bounds_cmd->parsed()) return run_bounds(bounds_flags);
    if (risk_cmd->parsed()) return run_risk(risk_flags);
    if (sweep_cmd->parsed()) return run_sweep(sweep_flags);
    return run_verify(verify_flags, verify_suites);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
}
