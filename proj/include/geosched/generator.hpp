#pragma once

// Seeded random GSP instances for the three objective families.

#include <cstdint>
#include <string>

#include "geosched/gsp.hpp"

namespace geosched {

enum class Family { WeightedFlow, FlowSquared, Tardiness, Mixed };

Family parseFamily(const std::string& name);
std::string familyName(Family family);

struct GeneratorConfig {
  Family family = Family::WeightedFlow;
  std::size_t n = 3;
  Time max_size = 3;
  Time max_release = 3;
  Cost min_weight = 1;
  Cost max_weight = 4;
  std::uint64_t seed = 1;
  /// Tardiness deadlines may fall before the release when set.
  bool allow_degenerate = false;

  void validate() const;
};

/// Same config, same instance. Job ids are "j1".."jn".
GspInstance generate(const GeneratorConfig& config);

}  // namespace geosched
