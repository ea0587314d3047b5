#ifndef HAMSELECT_SYMPOLY_HPP
#define HAMSELECT_SYMPOLY_HPP

#include <span>
#include <vector>

namespace hamselect {

// log e_m({exp(logL_i)}) by the two-term prefix recurrence with log-sum-exp at
// every accumulation. -inf entries (zero likelihood ratio) are allowed: terms
// containing them vanish. m = 0 returns 0.
double log_elem_sym(std::span<const double> logL, int m);

// All degrees 0..m_max at once; result[m] = log e_m.
std::vector<double> log_elem_sym_table(std::span<const double> logL, int m_max);

// log e_m of the vector with entry j (0-based) removed. Recomputed from
// scratch, never down-dated by division.
double log_elem_sym_excluding(std::span<const double> logL, int m, int j);

// Exact subset enumeration in direct arithmetic; oracle, refused for d > 22.
double brute_force_elem_sym(std::span<const double> L, int m);

}  // namespace hamselect

#endif
