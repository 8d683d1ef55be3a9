#pragma once

// Light points: one multi-cover instance (R2M) per capacity class, each
// rounded by demand capping, harmonic rounds and a local-ratio unit cover.

#include <cstdint>
#include <functional>
#include <vector>

#include "geosched/exact_cover.hpp"
#include "geosched/rounding.hpp"

namespace geosched {

struct R2mPoint {
  Time x = 0;
  Time y = 0;
  Cost demand = 0;
  std::size_t source_point = 0;
};

struct R2mRect {
  Time xmax = 0;
  TimeInterval y;
  Cost weight = 0;
  std::size_t source_rect = 0;

  bool covers(const R2mPoint& p) const { return p.x <= xmax && y.contains(p.y); }
};

/// Every point must be covered by `demand` distinct rectangles. `frac` is a
/// fractional solution indexed like `rects`.
struct R2mInstance {
  int cls = 0;
  std::vector<R2mPoint> points;
  std::vector<R2mRect> rects;
  std::vector<double> frac;

  std::vector<std::vector<std::size_t>> coverers() const;
  Cost maxDemand() const;
  double fractionalCost() const;
  Cost weightOf(const std::vector<std::size_t>& chosen) const;
  /// True when every point has at least `demand` distinct chosen coverers.
  bool covered(const std::vector<std::size_t>& chosen) const;
};

CoverProblem toCoverProblem(const R2mInstance& r2m);

/// Capacity classes l that have at least one unpicked rectangle.
std::vector<int> rectangleClasses(const ResidualClassified& rc);

/// B_l: light points with demand floor(sum of class-l x' over coverers),
/// zero-demand points dropped, rectangles = unpicked class-l rectangles.
/// Throws AssertionFailure (stage "light") if x' is not fractionally
/// feasible for the demands.
R2mInstance buildR2M(const R2cInstance& r2c, const ResidualClassified& rc, const PointPartition& part, int cls);

struct CapResult {
  std::vector<std::size_t> picked;  // indices into the input instance
  R2mInstance residual;             // residual.rects[i].source_rect is preserved
  std::vector<std::size_t> residual_origin;  // residual rect -> input rect index
  int trials = 0;
  double threshold = 0.0;
};

inline constexpr double kDemandCapConstant = 8.0;
inline constexpr int kDemandCapTrials = 20;

/// Picks each rectangle with probability min(1, 2 x_j). Points with demand
/// >= c ln m must be fully covered by the sample, otherwise it is redrawn
/// (at most kDemandCapTrials times). Throws AssertionFailure (stage
/// "cap-demands") when every trial fails.
CapResult capDemands(const R2mInstance& r2m, std::uint64_t seed, double c = kDemandCapConstant);

/// Unit-demand cover of `instance` (indices into instance.rects).
using SetCoverRounder = std::function<std::vector<std::size_t>(const R2mInstance&)>;

struct RoundsResult {
  std::vector<std::size_t> chosen;  // indices into the input instance
  std::vector<double> round_weight;
  std::vector<double> round_lp_cost;  // cost of y^(r) on the unchosen sets
};

/// d rounds; round r covers the points whose remaining demand equals
/// d - r + 1 using `rounder` on the still-unchosen rectangles.
RoundsResult multiCoverRounds(const R2mInstance& r2m, const SetCoverRounder& rounder);

/// Local ratio on unit demands: peel the rightmost point (max x, then max y,
/// then index), charge the minimum coverer weight to all its coverers, take
/// the zero-weight rectangles, recurse, and greedily delete redundant
/// rectangles in reverse pick order on the way back.
std::vector<std::size_t> localRatioCover(const R2mInstance& unit);

/// capDemands followed by multiCoverRounds with localRatioCover. Returns
/// source rectangle indices.
struct LightClassAudit {
  int cls = 0;
  std::size_t points = 0;
  Cost max_demand = 0;
  Cost capped_max_demand = 0;
  int cap_trials = 0;
  double fractional_cost = 0.0;
  Cost weight = 0;
  std::vector<double> round_weight;
};

std::vector<std::size_t> solveLightClass(const R2mInstance& r2m, std::uint64_t seed, LightClassAudit* audit = nullptr);

/// Union of per-class covers (source rectangle indices). Throws
/// AssertionFailure (stage "merge") when some light point gets
/// sum_l 2^l * (#picked class-l coverers) < d'_p.
Cover mergeLightCovers(const R2cInstance& r2c, const ResidualClassified& rc, const PointPartition& part,
                       const std::vector<std::vector<std::size_t>>& per_class);

}  // namespace geosched
