#include "geosched/heavy.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace geosched {

double R3uInstance::fractionalCost() const {
  double total = 0.0;
  for (std::size_t c = 0; c < cuboids.size(); ++c) total += static_cast<double>(cuboids[c].weight) * frac[c];
  return total;
}

R3uInstance buildR3U(const R2cInstance& r2c, const ResidualClassified& rc, const PointPartition& part,
                     double tolerance) {
  R3uInstance out;
  for (std::size_t p : part.heavy) {
    const R2cPoint& pt = r2c.points[p];
    out.points.push_back({pt.x, pt.y, rc.rounded_demand[p], p});
  }
  for (std::size_t r = 0; r < r2c.rects.size(); ++r) {
    if (rc.in_picked[r]) continue;
    const R2cRect& rect = r2c.rects[r];
    out.cuboids.push_back({rect.xmax, rect.y, rc.rounded_capacity[r], rect.weight, r});
    out.frac.push_back(rc.scaled[r]);
  }
  for (const R3uPoint& p : out.points) {
    double mass = 0.0;
    for (std::size_t c = 0; c < out.cuboids.size(); ++c)
      if (out.cuboids[c].covers(p)) mass += out.frac[c];
    if (mass < 1.0 - tolerance) {
      std::ostringstream os;
      os << "heavy point " << p.source_point << " is fractionally covered only " << mass;
      throw AssertionFailure("heavy", os.str());
    }
  }
  return out;
}

CoverProblem toCoverProblem(const R3uInstance& r3u) {
  CoverProblem problem;
  problem.demand.assign(r3u.points.size(), 1);
  for (const R3uCuboid& c : r3u.cuboids) {
    problem.weight.push_back(c.weight);
    auto& contrib = problem.contributions.emplace_back();
    for (std::size_t p = 0; p < r3u.points.size(); ++p)
      if (c.covers(r3u.points[p])) contrib.emplace_back(p, 1);
  }
  return problem;
}

std::vector<std::size_t> lpGreedyCover(const R3uInstance& r3u, const R2cInstance& r2c) {
  const std::size_t nc = r3u.cuboids.size();
  std::vector<std::vector<std::size_t>> covered(nc);
  std::vector<bool> coverable(r3u.points.size(), false);
  for (std::size_t c = 0; c < nc; ++c)
    for (std::size_t p = 0; p < r3u.points.size(); ++p)
      if (r3u.cuboids[c].covers(r3u.points[p])) {
        covered[c].push_back(p);
        coverable[p] = true;
      }
  for (std::size_t p = 0; p < r3u.points.size(); ++p)
    if (!coverable[p])
      throw InvalidInput("R3U point " + std::to_string(r3u.points[p].source_point) + " is covered by no cuboid");

  std::vector<bool> done(r3u.points.size(), false);
  std::vector<bool> taken(nc, false);
  std::size_t remaining = r3u.points.size();
  std::vector<std::size_t> picks;
  while (remaining > 0) {
    std::size_t best = nc;
    Cost best_new = 0;
    for (std::size_t c = 0; c < nc; ++c) {
      if (taken[c]) continue;
      Cost fresh = 0;
      for (std::size_t p : covered[c]) fresh += done[p] ? 0 : 1;
      if (fresh == 0) continue;
      if (best == nc) {
        best = c;
        best_new = fresh;
        continue;
      }
      const Cost w = r3u.cuboids[c].weight, bw = r3u.cuboids[best].weight;
      // w / fresh vs bw / best_new, exactly.
      const Cost lhs = checked::mul(w, best_new), rhs = checked::mul(bw, fresh);
      bool better = lhs < rhs;
      if (lhs == rhs) {
        better = w < bw ||
                 (w == bw && r2c.rects[r3u.cuboids[c].source_rect].id < r2c.rects[r3u.cuboids[best].source_rect].id);
      }
      if (better) {
        best = c;
        best_new = fresh;
      }
    }
    taken[best] = true;
    picks.push_back(best);
    for (std::size_t p : covered[best])
      if (!done[p]) {
        done[p] = true;
        --remaining;
      }
  }
  return picks;
}

std::vector<std::size_t> envelopeSequence(std::span<const AnchoredRect> rects) {
  std::vector<Time> ys;
  for (const AnchoredRect& r : rects) {
    if (r.yhi <= r.ylo) throw InvalidInput("anchored rectangle needs ylo < yhi");
    if (r.xmax <= 0) throw InvalidInput("anchored rectangle needs xmax > 0");
    ys.push_back(r.ylo);
    ys.push_back(r.yhi);
  }
  std::sort(ys.begin(), ys.end());
  ys.erase(std::unique(ys.begin(), ys.end()), ys.end());

  std::vector<std::size_t> faces;
  Time prev_height = 0;
  for (std::size_t i = 0; i + 1 < ys.size(); ++i) {
    Time height = 0;
    std::size_t owner = 0;
    for (std::size_t r = 0; r < rects.size(); ++r) {
      if (rects[r].ylo <= ys[i] && rects[r].yhi >= ys[i + 1] && rects[r].xmax > height) {
        height = rects[r].xmax;
        owner = r;
      }
    }
    if (height > 0 && height != prev_height) faces.push_back(owner);
    prev_height = height;
  }
  return faces;
}

std::size_t unionComplexity2D(std::span<const AnchoredRect> rects) { return envelopeSequence(rects).size(); }

UnionComplexity3D unionComplexity3D(std::span<const AnchoredCuboid> cuboids) {
  std::vector<Cost> heights;
  for (const AnchoredCuboid& c : cuboids) {
    if (c.height < 1 || floorPow2(c.height) != c.height) throw InvalidInput("cuboid heights must be powers of two");
    heights.push_back(c.height);
  }
  std::sort(heights.begin(), heights.end());
  heights.erase(std::unique(heights.begin(), heights.end()), heights.end());

  UnionComplexity3D out;
  out.distinct_heights = heights.size();
  for (Cost h : heights) {
    std::vector<AnchoredRect> slice;
    for (const AnchoredCuboid& c : cuboids)
      if (c.height >= h) slice.push_back(c.base);
    out.faces += unionComplexity2D(slice);
  }
  return out;
}

}  // namespace geosched
