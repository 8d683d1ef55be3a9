#pragma once

// Generic weighted (multi-)cover problem and an exact branch-and-bound
// oracle for small instances.

#include <vector>

#include "geosched/common.hpp"

namespace geosched {

/// Point p needs the picked sets to contribute at least demand[p]; set s
/// contributes `amount` to each point listed in contributions[s].
struct CoverProblem {
  std::vector<Cost> demand;
  std::vector<Cost> weight;
  std::vector<std::vector<std::pair<std::size_t, Cost>>> contributions;

  std::size_t numSets() const { return weight.size(); }
  bool feasible(const std::vector<std::size_t>& chosen) const;
  Cost weightOf(const std::vector<std::size_t>& chosen) const;
};

struct ExactCover {
  std::vector<std::size_t> chosen;
  Cost weight = 0;
  std::size_t nodes = 0;
};

inline constexpr std::size_t kExactCoverMaxSets = 24;

/// Depth-first branch and bound with knapsack-cover-truncated LP bounds.
/// Throws CapExceeded above kExactCoverMaxSets sets and InvalidInput when
/// even picking every set is infeasible.
ExactCover exactCoverBB(const CoverProblem& problem);

/// Fractional optimum of the natural LP relaxation (capacities truncated at
/// the demand).
double fractionalCoverValue(const CoverProblem& problem);

}  // namespace geosched
