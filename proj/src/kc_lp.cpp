#include "geosched/kc_lp.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace geosched {

LinearRow KcConstraint::row() const {
  LinearRow out;
  out.rhs = static_cast<double>(rhs);
  for (const auto& [r, c] : coefficients) out.terms.emplace_back(r, static_cast<double>(c));
  return out;
}

KcConstraint knapsackCover(const R2cInstance& r2c, std::size_t point, std::vector<std::size_t> picked) {
  std::sort(picked.begin(), picked.end());
  KcConstraint kc;
  kc.point = point;
  const R2cPoint& p = r2c.points.at(point);
  Cost used = 0;
  for (std::size_t r : picked)
    if (r2c.rects.at(r).covers(p)) used = checked::add(used, r2c.rects[r].capacity);
  kc.rhs = p.demand - used;
  kc.picked = std::move(picked);
  if (kc.rhs <= 0) return kc;
  for (std::size_t r = 0; r < r2c.rects.size(); ++r) {
    if (!r2c.rects[r].covers(p) || std::binary_search(kc.picked.begin(), kc.picked.end(), r)) continue;
    kc.coefficients.emplace_back(r, std::min(r2c.rects[r].capacity, kc.rhs));
  }
  return kc;
}

double FracSolution::value(std::size_t r) const { return std::clamp(x.at(r), 0.0, 1.0); }

std::vector<std::size_t> thresholdSet(const R2cInstance&, const std::vector<std::vector<std::size_t>>& coverers,
                                      std::size_t point, const FracSolution& x, double beta) {
  std::vector<std::size_t> s;
  for (std::size_t r : coverers[point])
    if (x.value(r) >= beta) s.push_back(r);
  return s;
}

namespace {

double slackOf(const KcConstraint& kc, const FracSolution& x) {
  if (kc.rhs <= 0) return 0.0;
  double lhs = 0.0;
  for (const auto& [r, c] : kc.coefficients) lhs += static_cast<double>(c) * x.value(r);
  return lhs - static_cast<double>(kc.rhs);
}

}  // namespace

KcLpResult solveKcLp(const R2cInstance& r2c, const KcLpOptions& options) {
  if (!(options.beta > 0.0 && options.beta < 1.0)) throw InvalidInput("beta must lie in (0, 1)");
  if (r2c.rects.empty() && !r2c.points.empty()) throw InvalidInput("R2C instance has points but no rectangles");

  KcLpResult result;
  const auto coverers = r2c.coverers();
  std::vector<double> cost(r2c.rects.size());
  for (std::size_t r = 0; r < r2c.rects.size(); ++r) cost[r] = static_cast<double>(r2c.rects[r].weight);

  for (std::size_t p = 0; p < r2c.points.size(); ++p) {
    LinearRow row;
    row.rhs = static_cast<double>(r2c.points[p].demand);
    for (std::size_t r : coverers[p]) row.terms.emplace_back(r, static_cast<double>(r2c.rects[r].capacity));
    result.base_rows.push_back(std::move(row));
  }

  const std::size_t cap = options.iteration_cap.value_or(std::max<std::size_t>(1, 50 * r2c.points.size()));
  std::set<std::pair<std::size_t, std::vector<std::size_t>>> pooled;
  std::vector<LinearRow> pool = result.base_rows;

  for (result.iterations = 1;; ++result.iterations) {
    LpSolution lp;
    try {
      lp = solveBoxCoveringLp(cost, pool);
    } catch (const LpInfeasible& e) {
      // x = 1 satisfies every row of a feasible covering instance.
      throw AssertionFailure("kc-lp", std::string("LP infeasible: ") + e.what());
    }
    result.solution = {lp.x, lp.objective};
    result.history.push_back(lp.objective);

    std::size_t added = 0;
    double worst = 0.0;
    for (std::size_t p = 0; p < r2c.points.size(); ++p) {
      auto s = thresholdSet(r2c, coverers, p, result.solution, options.beta);
      KcConstraint kc = knapsackCover(r2c, p, s);
      const double slack = slackOf(kc, result.solution);
      if (slack >= -options.epsilon) continue;
      worst = std::max(worst, -slack);
      if (!pooled.emplace(p, kc.picked).second) continue;  // already pooled; numerical residue
      pool.push_back(kc.row());
      result.cuts.push_back(std::move(kc));
      ++added;
    }
    if (added == 0) {
      if (worst > 0.0) {
        std::ostringstream os;
        os << "pooled knapsack-cover inequality still violated by " << worst;
        throw KcLpError(os.str());
      }
      return result;
    }
    if (result.iterations >= cap) {
      std::ostringstream os;
      os << "cutting-plane iteration cap " << cap << " reached with pool size " << pool.size()
         << " and max violation " << worst;
      throw KcLpError(os.str());
    }
  }
}

KcResidualReport checkKcResidual(const R2cInstance& r2c, const FracSolution& x, double beta) {
  KcResidualReport report;
  const auto coverers = r2c.coverers();
  report.slack.resize(r2c.points.size(), 0.0);
  for (std::size_t p = 0; p < r2c.points.size(); ++p) {
    KcConstraint kc = knapsackCover(r2c, p, thresholdSet(r2c, coverers, p, x, beta));
    report.slack[p] = slackOf(kc, x);
    if (report.slack[p] < report.min_slack) {
      report.min_slack = report.slack[p];
      report.worst_point = p;
    }
  }
  return report;
}

}  // namespace geosched
