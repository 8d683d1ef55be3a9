#pragma once

// Test-only oracles and instance builders. Nothing here calls into the
// solver code it is used to check, except where noted.

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "geosched/generator.hpp"
#include "geosched/heavy.hpp"
#include "geosched/kc_lp.hpp"
#include "geosched/light.hpp"

namespace geosched::testing {

/// a = (r 1, p 2, constant 1), b = (r 2, p 1, constant 2).
GspInstance twoJobs();

GspInstance makeInstance(std::vector<Job> jobs);

/// Minimum schedule cost by enumerating every slot sequence (no memoization).
Cost enumerateGspOptimum(const GspInstance& instance);

/// Minimum weight feasible cover by subset enumeration. nullopt if none.
std::optional<Cost> enumerateCoverOptimum(const CoverProblem& problem);

/// Every feasible cover of an R2C instance, by subset enumeration.
std::vector<Cover> feasibleCovers(const R2cInstance& r2c);

/// LP value with every knapsack-cover inequality (all subsets S of each
/// point's coverers) written out. Uses the library LP kernel.
double fullKcLpValue(const R2cInstance& r2c);

struct Synthetic {
  R2cInstance r2c;
  FracSolution x;
};

/// Random R2C instance with a fractional x that satisfies every threshold KC
/// inequality at `beta`. Most x values sit below beta and most capacities are
/// small, so rounding meets both heavy and light points.
Synthetic syntheticR2c(std::uint64_t seed, double beta = 1.0 / 12.0);

/// Random R2M instance: demands are floor of the covering x mass, so the
/// attached x is fractionally feasible. Points nobody covers are dropped.
R2mInstance randomR2m(std::uint64_t seed, std::size_t rects, std::size_t points, bool unit_demand,
                      double xlo = 0.0, double xhi = 1.0);

/// Rightmost x of the union at height y, by direct scan.
Time envelopeAt(std::span<const AnchoredRect> rects, double y);

/// Face count by sampling the envelope at every elementary y-piece midpoint.
std::size_t faceCountOracle(std::span<const AnchoredRect> rects);

double harmonic(Cost d);

}  // namespace geosched::testing
