#pragma once

// Heavy points: uncapacitated cover by corner-anchored cuboids (R3U), plus
// the union-complexity measurements that make the cuboid family "shallow".

#include <span>
#include <vector>

#include "geosched/exact_cover.hpp"
#include "geosched/rounding.hpp"

namespace geosched {

struct R3uPoint {
  Time x = 0;
  Time y = 0;
  Cost z = 0;  // rounded demand d'_p
  std::size_t source_point = 0;
};

/// [0, xmax] x y x [0, height].
struct R3uCuboid {
  Time xmax = 0;
  TimeInterval y;
  Cost height = 0;  // rounded capacity c'_r
  Cost weight = 0;
  std::size_t source_rect = 0;

  bool covers(const R3uPoint& p) const { return p.x <= xmax && y.contains(p.y) && p.z <= height; }
};

struct R3uInstance {
  std::vector<R3uPoint> points;
  std::vector<R3uCuboid> cuboids;
  /// x' restricted to the cuboids, indexed like `cuboids`.
  std::vector<double> frac;

  double fractionalCost() const;
};

/// One point per heavy point, one cuboid per unpicked rectangle. Throws
/// AssertionFailure (stage "heavy") if x' is not fractionally feasible.
R3uInstance buildR3U(const R2cInstance& r2c, const ResidualClassified& rc, const PointPartition& part,
                     double tolerance = 1e-9);

CoverProblem toCoverProblem(const R3uInstance& r3u);

/// Greedy weighted set cover: repeatedly takes the cuboid minimising
/// weight / newly covered points; ties by lower weight, then by the source
/// rectangle id. Returns cuboid indices in pick order.
std::vector<std::size_t> lpGreedyCover(const R3uInstance& r3u, const R2cInstance& r2c);

/// Left-anchored rectangle [0, xmax] x [ylo, yhi].
struct AnchoredRect {
  Time xmax = 0;
  Time ylo = 0;
  Time yhi = 0;
};

/// Number of maximal vertical faces on the right boundary of the union,
/// i.e. maximal y-runs where the envelope max{xmax : y in [ylo, yhi]} is
/// constant and positive.
std::size_t unionComplexity2D(std::span<const AnchoredRect> rects);

/// Envelope owner per face, bottom to top (lowest index on ties).
std::vector<std::size_t> envelopeSequence(std::span<const AnchoredRect> rects);

struct AnchoredCuboid {
  AnchoredRect base;
  Cost height = 1;
};

struct UnionComplexity3D {
  std::size_t faces = 0;
  std::size_t distinct_heights = 0;
};

/// Sums unionComplexity2D over the slices between consecutive distinct
/// heights; heights must be powers of two.
UnionComplexity3D unionComplexity3D(std::span<const AnchoredCuboid> cuboids);

}  // namespace geosched
