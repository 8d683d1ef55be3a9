#include "geosched/rounding.hpp"

#include <algorithm>
#include <sstream>

namespace geosched {

ResidualClassified preprocess(const R2cInstance& r2c, const FracSolution& x, double beta, double tolerance) {
  if (!(beta > 0.0 && beta < 1.0)) throw InvalidInput("beta must lie in (0, 1)");
  if (x.x.size() != r2c.rects.size()) throw InvalidInput("fractional solution does not match the rectangles");

  const KcResidualReport check = checkKcResidual(r2c, x, beta);
  if (!check.holds(tolerance)) {
    std::ostringstream os;
    os << "point " << *check.worst_point << " violates its knapsack-cover inequality by " << -check.min_slack;
    throw AssertionFailure("preprocess", os.str());
  }

  ResidualClassified rc;
  rc.beta = beta;
  const std::size_t nr = r2c.rects.size();
  rc.in_picked.assign(nr, false);
  rc.rounded_capacity.resize(nr);
  rc.rect_class.resize(nr);
  rc.scaled.assign(nr, 0.0);
  for (std::size_t r = 0; r < nr; ++r) {
    const double v = x.value(r);
    if (v >= beta) {
      rc.in_picked[r] = true;
      rc.picked.insert(r);
    } else {
      rc.scaled[r] = std::min(1.0, v / beta);
    }
    rc.rounded_capacity[r] = floorPow2(r2c.rects[r].capacity);
    rc.rect_class[r] = log2Exact(rc.rounded_capacity[r]);
  }

  const std::size_t np = r2c.points.size();
  rc.residual.resize(np);
  rc.rounded_demand.assign(np, 0);
  rc.point_class.assign(np, -1);
  for (std::size_t p = 0; p < np; ++p) {
    Cost used = 0;
    for (std::size_t r : rc.picked.rects)
      if (r2c.rects[r].covers(r2c.points[p])) used += r2c.rects[r].capacity;
    rc.residual[p] = r2c.points[p].demand - used;
    if (rc.residual[p] <= 0) continue;
    rc.rounded_demand[p] = ceilPow2(rc.residual[p]);
    rc.point_class[p] = log2Exact(rc.rounded_demand[p]);
  }
  return rc;
}

double scaledInequalitySlack(const R2cInstance& r2c, const ResidualClassified& rc, std::size_t point) {
  const Cost d = rc.rounded_demand.at(point);
  if (d == 0) return 0.0;
  double lhs = 0.0;
  for (std::size_t r = 0; r < r2c.rects.size(); ++r) {
    if (rc.in_picked[r] || !r2c.rects[r].covers(r2c.points[point])) continue;
    lhs += static_cast<double>(std::min(rc.rounded_capacity[r], d)) * rc.scaled[r];
  }
  return lhs - static_cast<double>(d) / (4.0 * rc.beta);
}

double lowClassMass(const R2cInstance& r2c, const ResidualClassified& rc, std::size_t point) {
  const int i = rc.point_class.at(point);
  double mass = 0.0;
  for (std::size_t r = 0; r < r2c.rects.size(); ++r) {
    if (rc.in_picked[r] || rc.rect_class[r] >= i || !r2c.rects[r].covers(r2c.points[point])) continue;
    mass += static_cast<double>(rc.rounded_capacity[r]) * rc.scaled[r];
  }
  return mass;
}

PointPartition classify(const R2cInstance& r2c, const ResidualClassified& rc, double tolerance) {
  PointPartition part;
  part.kind.assign(r2c.points.size(), PointKind::Satisfied);
  const double light_factor = (1.0 - 4.0 * rc.beta) / (4.0 * rc.beta);
  for (std::size_t p = 0; p < r2c.points.size(); ++p) {
    const Cost d = rc.rounded_demand[p];
    if (d == 0) continue;
    double high = 0.0;
    for (std::size_t r = 0; r < r2c.rects.size(); ++r)
      if (!rc.in_picked[r] && rc.rounded_capacity[r] >= d && r2c.rects[r].covers(r2c.points[p]))
        high += rc.scaled[r];
    if (high >= 1.0) {
      part.kind[p] = PointKind::Heavy;
      part.heavy.push_back(p);
      continue;
    }
    part.kind[p] = PointKind::Light;
    part.light.push_back(p);
    // Rectangles of class >= i contribute less than d'_p in total, so the
    // strictly lower classes carry the rest of the scaled inequality.
    const double mass = lowClassMass(r2c, rc, p);
    if (mass < light_factor * static_cast<double>(d) - tolerance) {
      std::ostringstream os;
      os << "light point " << p << " has low-class mass " << mass << " below " << light_factor << " * " << d;
      throw AssertionFailure("classify", os.str());
    }
  }
  return part;
}

}  // namespace geosched
