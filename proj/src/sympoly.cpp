#include "hamselect/sympoly.hpp"

#include <bit>
#include <cstdint>
#include <stdexcept>

#include "hamselect/special.hpp"

namespace hamselect {

std::vector<double> log_elem_sym_table(std::span<const double> logL, int m_max) {
  const int d = static_cast<int>(logL.size());
  if (m_max < 0 || m_max > d) throw std::domain_error("log_elem_sym: m out of range [0, d]");
  std::vector<double> e(static_cast<std::size_t>(m_max) + 1, kNegInf);
  e[0] = 0.0;
  int seen = 0;
  for (double l : logL) {
    ++seen;
    const int top = std::min(m_max, seen);
    for (int j = top; j >= 1; --j) e[j] = log_sum_exp(e[j], l + e[j - 1]);
  }
  return e;
}

double log_elem_sym(std::span<const double> logL, int m) {
  return log_elem_sym_table(logL, m)[static_cast<std::size_t>(m)];
}

double log_elem_sym_excluding(std::span<const double> logL, int m, int j) {
  const int d = static_cast<int>(logL.size());
  if (j < 0 || j >= d) throw std::domain_error("log_elem_sym_excluding: j out of range");
  if (m < 0 || m > d - 1) throw std::domain_error("log_elem_sym_excluding: m out of range [0, d-1]");
  std::vector<double> rest;
  rest.reserve(static_cast<std::size_t>(d) - 1);
  for (int i = 0; i < d; ++i)
    if (i != j) rest.push_back(logL[static_cast<std::size_t>(i)]);
  return log_elem_sym(rest, m);
}

double brute_force_elem_sym(std::span<const double> L, int m) {
  const int d = static_cast<int>(L.size());
  if (d > 22) throw std::domain_error("brute_force_elem_sym: refused for d > 22");
  if (m < 0 || m > d) throw std::domain_error("brute_force_elem_sym: m out of range [0, d]");
  if (m == 0) return 1.0;
  double sum = 0.0;
  const std::uint32_t limit = 1u << d;
  for (std::uint32_t mask = 0; mask < limit; ++mask) {
    if (std::popcount(mask) != m) continue;
    double prod = 1.0;
    for (int i = 0; i < d; ++i)
      if (mask & (1u << i)) prod *= L[static_cast<std::size_t>(i)];
    sum += prod;
  }
  return sum;
}

}  // namespace hamselect
