#pragma once

// Threshold picking and residual rounding of a KC-LP solution.
//
// Rectangles with x_r >= beta are picked outright (set S). Surviving points
// keep residual demand d_p - c(S_p), rounded up to a power of two d'_p; every
// rectangle's capacity is rounded down to a power of two c'_r; the remaining
// solution is scaled by 1/beta into x'. A surviving point is heavy when
// rectangles of class >= its own carry x' mass >= 1, light otherwise.

#include <vector>

#include "geosched/kc_lp.hpp"

namespace geosched {

enum class PointKind { Satisfied, Heavy, Light };

struct ResidualClassified {
  double beta = 1.0 / 12.0;
  std::vector<bool> in_picked;
  Cover picked;
  std::vector<Cost> residual;         // d_p - c(S_p)
  std::vector<Cost> rounded_demand;   // d'_p, 0 for satisfied points
  std::vector<int> point_class;       // log2 d'_p, -1 for satisfied points
  std::vector<Cost> rounded_capacity; // c'_r
  std::vector<int> rect_class;        // log2 c'_r
  std::vector<double> scaled;         // x'_r, 0 on picked rectangles
};

/// Throws AssertionFailure (stage "preprocess") when x violates some (p, S_p)
/// knapsack-cover inequality by more than `tolerance`.
ResidualClassified preprocess(const R2cInstance& r2c, const FracSolution& x, double beta = 1.0 / 12.0,
                              double tolerance = 1e-6);

struct PointPartition {
  std::vector<PointKind> kind;
  std::vector<std::size_t> heavy;
  std::vector<std::size_t> light;
};

/// Tags surviving points. Throws AssertionFailure (stage "classify") if a
/// light point misses sum_{c'_r <= d'_p} c'_r x'_r >= ((1-4beta)/(4beta)) d'_p.
PointPartition classify(const R2cInstance& r2c, const ResidualClassified& rc, double tolerance = 1e-6);

/// sum over unpicked coverers of min(c'_r, d'_p) x'_r, minus d'_p / (4 beta).
double scaledInequalitySlack(const R2cInstance& r2c, const ResidualClassified& rc, std::size_t point);

/// sum_{l < i} 2^l sum_{class-l r covers p} x'_r for a point of class i.
double lowClassMass(const R2cInstance& r2c, const ResidualClassified& rc, std::size_t point);

}  // namespace geosched
