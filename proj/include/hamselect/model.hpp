#ifndef HAMSELECT_MODEL_HPP
#define HAMSELECT_MODEL_HPP

#include "hamselect/dist.hpp"

namespace hamselect {

// The pivotal problem instance: d independent observations, s of them drawn
// from the alternative, the rest from the null.
struct TwoPointModel {
  DistributionSpec spec;
  int d = 0;
  int s = 0;
  // Relaxes the "null differs from alternative" invariant (a > 0) so that
  // exchangeability closed forms can serve as oracles.
  bool diagnostic_null = false;

  void validate() const;  // throws std::invalid_argument
};

}  // namespace hamselect

#endif
