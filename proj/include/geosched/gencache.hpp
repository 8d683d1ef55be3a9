#pragma once

// Identical release times: the rectangle cover degenerates to covering
// demands on a line by weighted, sized intervals (generalized caching).

#include <optional>
#include <string>
#include <vector>

#include "geosched/exact_cover.hpp"
#include "geosched/gsp.hpp"

namespace geosched {

struct CacheInterval {
  std::string id;
  TimeInterval span;
  Cost size = 1;
  Cost weight = 0;
};

struct CacheDemand {
  Time t = 0;
  Cost demand = 0;
};

struct CachingInstance {
  std::vector<CacheDemand> demands;
  std::vector<CacheInterval> intervals;

  /// First time point whose demand the chosen intervals miss.
  std::optional<std::size_t> firstDeficit(const std::vector<std::size_t>& chosen) const;
  Cost weightOf(const std::vector<std::size_t>& chosen) const;
};

CoverProblem toCoverProblem(const CachingInstance& instance);

/// Timeline index t counts the slots elapsed since the common release r, so
/// the window [r, r + t] has demand D - t (D = total size). Interval I_k^j =
/// [a, b] becomes the span [a - r - 1, b - r - 1]. Demands are emitted at the
/// breakpoint times only, and only where positive. Throws InvalidInput when
/// releases differ.
CachingInstance fromIdenticalRelease(const GspInstance& instance);

struct PrimalDualResult {
  std::vector<std::size_t> chosen;  // after reverse delete, sorted
  std::vector<std::size_t> raise_order;
  double dual_value = 0.0;
};

/// Knapsack-cover primal-dual: while some time point is deficient, take the
/// one with the largest deficit (ties leftmost) and raise its KC dual until
/// an interval's reduced weight reaches 0 (ties lowest index); then delete
/// redundant intervals in reverse order. Throws InvalidInput naming the time
/// point when the instance is infeasible.
PrimalDualResult primalDualCache(const CachingInstance& instance);

}  // namespace geosched
