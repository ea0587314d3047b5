#ifndef HAMSELECT_VERIFY_HPP
#define HAMSELECT_VERIFY_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace hamselect {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct SuiteReport {
  std::string suite;
  std::vector<CheckResult> checks;

  bool passed() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
};

// Suites: sympoly, bayes, deterministic, identities, chi2, counterexamples.
// The counterexamples suite passes when the documented arithmetic failure of
// the per-coordinate product bound reproduces exactly.
SuiteReport run_verify_suite(const std::string& suite, std::uint64_t seed, int threads = 1);

std::vector<std::string> verify_suite_names();

}  // namespace hamselect

#endif
