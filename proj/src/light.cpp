#include "geosched/light.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace geosched {

namespace {

constexpr double kFloorGuard = 1e-9;

}  // namespace

std::vector<std::vector<std::size_t>> R2mInstance::coverers() const {
  std::vector<std::vector<std::size_t>> out(points.size());
  for (std::size_t p = 0; p < points.size(); ++p)
    for (std::size_t r = 0; r < rects.size(); ++r)
      if (rects[r].covers(points[p])) out[p].push_back(r);
  return out;
}

Cost R2mInstance::maxDemand() const {
  Cost d = 0;
  for (const R2mPoint& p : points) d = std::max(d, p.demand);
  return d;
}

double R2mInstance::fractionalCost() const {
  double total = 0.0;
  for (std::size_t r = 0; r < rects.size(); ++r) total += static_cast<double>(rects[r].weight) * frac[r];
  return total;
}

Cost R2mInstance::weightOf(const std::vector<std::size_t>& chosen) const {
  Cost total = 0;
  for (std::size_t r : chosen) total = checked::add(total, rects.at(r).weight);
  return total;
}

bool R2mInstance::covered(const std::vector<std::size_t>& chosen) const {
  std::vector<std::size_t> distinct = chosen;
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  for (const R2mPoint& p : points) {
    Cost got = 0;
    for (std::size_t r : distinct) got += rects.at(r).covers(p) ? 1 : 0;
    if (got < p.demand) return false;
  }
  return true;
}

CoverProblem toCoverProblem(const R2mInstance& r2m) {
  CoverProblem problem;
  for (const R2mPoint& p : r2m.points) problem.demand.push_back(p.demand);
  for (const R2mRect& r : r2m.rects) {
    problem.weight.push_back(r.weight);
    auto& contrib = problem.contributions.emplace_back();
    for (std::size_t p = 0; p < r2m.points.size(); ++p)
      if (r.covers(r2m.points[p])) contrib.emplace_back(p, 1);
  }
  return problem;
}

std::vector<int> rectangleClasses(const ResidualClassified& rc) {
  std::vector<int> classes;
  for (std::size_t r = 0; r < rc.rect_class.size(); ++r)
    if (!rc.in_picked[r]) classes.push_back(rc.rect_class[r]);
  std::sort(classes.begin(), classes.end());
  classes.erase(std::unique(classes.begin(), classes.end()), classes.end());
  return classes;
}

R2mInstance buildR2M(const R2cInstance& r2c, const ResidualClassified& rc, const PointPartition& part, int cls) {
  R2mInstance out;
  out.cls = cls;
  for (std::size_t r = 0; r < r2c.rects.size(); ++r) {
    if (rc.in_picked[r] || rc.rect_class[r] != cls) continue;
    const R2cRect& rect = r2c.rects[r];
    out.rects.push_back({rect.xmax, rect.y, rect.weight, r});
    out.frac.push_back(rc.scaled[r]);
  }
  for (std::size_t p : part.light) {
    const R2cPoint& pt = r2c.points[p];
    double mass = 0.0;
    for (std::size_t i = 0; i < out.rects.size(); ++i)
      if (out.rects[i].xmax >= pt.x && out.rects[i].y.contains(pt.y)) mass += out.frac[i];
    const auto demand = static_cast<Cost>(std::floor(mass + kFloorGuard));
    if (demand <= 0) continue;
    out.points.push_back({pt.x, pt.y, demand, p});
  }
  return out;
}

CapResult capDemands(const R2mInstance& r2m, std::uint64_t seed, double c) {
  CapResult out;
  const std::size_t m = r2m.points.size();
  out.threshold = m > 0 ? c * std::log(static_cast<double>(m)) : 0.0;
  const auto coverers = r2m.coverers();

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<bool> take(r2m.rects.size());
  bool accepted = false;
  for (out.trials = 1; out.trials <= kDemandCapTrials; ++out.trials) {
    for (std::size_t r = 0; r < r2m.rects.size(); ++r) take[r] = unit(rng) < std::min(1.0, 2.0 * r2m.frac[r]);
    accepted = true;
    for (std::size_t p = 0; p < m && accepted; ++p) {
      if (static_cast<double>(r2m.points[p].demand) < out.threshold) continue;
      Cost got = 0;
      for (std::size_t r : coverers[p]) got += take[r] ? 1 : 0;
      accepted = got >= r2m.points[p].demand;
    }
    if (accepted) break;
  }
  if (!accepted) {
    std::ostringstream os;
    os << "class " << r2m.cls << ": no sample within " << kDemandCapTrials
       << " trials fully covered the points with demand >= " << out.threshold;
    throw AssertionFailure("cap-demands", os.str());
  }

  std::vector<std::size_t> remap(r2m.rects.size(), r2m.rects.size());
  out.residual.cls = r2m.cls;
  for (std::size_t r = 0; r < r2m.rects.size(); ++r) {
    if (take[r]) {
      out.picked.push_back(r);
      continue;
    }
    remap[r] = out.residual.rects.size();
    out.residual.rects.push_back(r2m.rects[r]);
    out.residual.frac.push_back(r2m.frac[r]);
    out.residual_origin.push_back(r);
  }
  for (std::size_t p = 0; p < m; ++p) {
    Cost got = 0;
    double unpicked_mass = 0.0;
    for (std::size_t r : coverers[p]) {
      if (take[r])
        ++got;
      else
        unpicked_mass += r2m.frac[r];
    }
    const Cost left = r2m.points[p].demand - got;
    if (left <= 0) continue;
    if (unpicked_mass < static_cast<double>(left) - 1e-7)
      throw AssertionFailure("cap-demands", "residual point lost fractional feasibility");
    R2mPoint residual_point = r2m.points[p];
    residual_point.demand = left;
    out.residual.points.push_back(residual_point);
  }
  return out;
}

RoundsResult multiCoverRounds(const R2mInstance& r2m, const SetCoverRounder& rounder) {
  RoundsResult out;
  const auto coverers = r2m.coverers();
  const Cost d = r2m.maxDemand();
  std::vector<bool> chosen(r2m.rects.size(), false);
  std::vector<Cost> current(r2m.points.size());
  for (std::size_t p = 0; p < r2m.points.size(); ++p) current[p] = r2m.points[p].demand;

  for (Cost round = 1; round <= d; ++round) {
    const Cost target = d - round + 1;
    R2mInstance unit;
    unit.cls = r2m.cls;
    std::vector<std::size_t> origin;
    double lp_cost = 0.0;
    for (std::size_t r = 0; r < r2m.rects.size(); ++r) {
      if (chosen[r]) continue;
      origin.push_back(r);
      unit.rects.push_back(r2m.rects[r]);
      unit.frac.push_back(r2m.frac[r] / static_cast<double>(target));
      lp_cost += static_cast<double>(r2m.rects[r].weight) * unit.frac.back();
    }
    for (std::size_t p = 0; p < r2m.points.size(); ++p) {
      if (current[p] != target) continue;
      double mass = 0.0;
      for (std::size_t r : coverers[p])
        if (!chosen[r]) mass += r2m.frac[r];
      if (mass / static_cast<double>(target) < 1.0 - 1e-7) {
        std::ostringstream os;
        os << "round " << round << ": scaled solution covers point " << r2m.points[p].source_point << " only "
           << mass / static_cast<double>(target);
        throw AssertionFailure("multi-cover", os.str());
      }
      R2mPoint q = r2m.points[p];
      q.demand = 1;
      unit.points.push_back(q);
    }
    if (unit.points.empty()) {
      out.round_weight.push_back(0.0);
      out.round_lp_cost.push_back(0.0);
      continue;
    }
    const std::vector<std::size_t> local = rounder(unit);
    if (!unit.covered(local)) throw AssertionFailure("multi-cover", "set-cover rounder returned an infeasible cover");
    Cost weight = 0;
    for (std::size_t i : local) {
      const std::size_t r = origin.at(i);
      if (chosen[r]) continue;
      chosen[r] = true;
      weight += r2m.rects[r].weight;
      out.chosen.push_back(r);
      for (std::size_t p = 0; p < r2m.points.size(); ++p)
        if (r2m.rects[r].covers(r2m.points[p])) --current[p];
    }
    out.round_weight.push_back(static_cast<double>(weight));
    out.round_lp_cost.push_back(lp_cost);
  }
  if (!r2m.covered(out.chosen)) throw AssertionFailure("multi-cover", "rounds left some demand uncovered");
  return out;
}

std::vector<std::size_t> localRatioCover(const R2mInstance& unit) {
  const std::size_t np = unit.points.size();
  const std::size_t nr = unit.rects.size();
  const auto coverers = unit.coverers();
  std::vector<Cost> weight(nr);
  for (std::size_t r = 0; r < nr; ++r) weight[r] = unit.rects[r].weight;

  struct Level {
    std::vector<std::size_t> points;  // points still uncovered when the level began
    std::vector<std::size_t> taken;   // zero-weight rectangles taken at this level
  };
  std::vector<Level> levels;
  std::vector<bool> taken(nr, false);
  std::vector<std::size_t> remaining;
  for (std::size_t p = 0; p < np; ++p)
    if (unit.points[p].demand > 0) remaining.push_back(p);

  while (!remaining.empty()) {
    std::size_t p = remaining.front();
    for (std::size_t q : remaining) {
      const R2mPoint &a = unit.points[q], &b = unit.points[p];
      if (a.x > b.x || (a.x == b.x && (a.y > b.y || (a.y == b.y && q > p)))) p = q;
    }
    if (coverers[p].empty())
      throw InvalidInput("point " + std::to_string(unit.points[p].source_point) + " has no covering rectangle");
    Cost z = weight[coverers[p].front()];
    for (std::size_t r : coverers[p]) z = std::min(z, weight[r]);
    for (std::size_t r : coverers[p]) weight[r] -= z;

    Level level;
    level.points = remaining;
    for (std::size_t r = 0; r < nr; ++r)
      if (!taken[r] && weight[r] == 0) {
        taken[r] = true;
        level.taken.push_back(r);
      }
    std::erase_if(remaining, [&](std::size_t q) {
      return std::any_of(level.taken.begin(), level.taken.end(),
                         [&](std::size_t r) { return unit.rects[r].covers(unit.points[q]); });
    });
    levels.push_back(std::move(level));
  }

  std::vector<std::size_t> rank(nr, 0);
  std::size_t next_rank = 0;
  for (const Level& l : levels)
    for (std::size_t r : l.taken) rank[r] = next_rank++;

  std::vector<std::size_t> solution;  // kept in pick order
  for (auto level = levels.rbegin(); level != levels.rend(); ++level) {
    solution.insert(solution.end(), level->taken.begin(), level->taken.end());
    std::sort(solution.begin(), solution.end(), [&](std::size_t a, std::size_t b) { return rank[a] < rank[b]; });
    // Greedy delete in reverse pick order against this level's points.
    const std::vector<std::size_t> order = solution;
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      const std::size_t r = *it;
      const bool redundant = std::all_of(level->points.begin(), level->points.end(), [&](std::size_t q) {
        if (!unit.rects[r].covers(unit.points[q])) return true;
        return std::any_of(solution.begin(), solution.end(),
                           [&](std::size_t o) { return o != r && unit.rects[o].covers(unit.points[q]); });
      });
      if (redundant) std::erase(solution, r);
    }
  }
  return solution;
}

std::vector<std::size_t> solveLightClass(const R2mInstance& r2m, std::uint64_t seed, LightClassAudit* audit) {
  LightClassAudit local;
  local.cls = r2m.cls;
  local.points = r2m.points.size();
  local.max_demand = r2m.maxDemand();
  local.fractional_cost = r2m.fractionalCost();

  std::vector<std::size_t> chosen;
  if (!r2m.points.empty()) {
    const double threshold = kDemandCapConstant * std::log(static_cast<double>(r2m.points.size()));
    if (static_cast<double>(local.max_demand) >= threshold) {
      CapResult cap = capDemands(r2m, seed);
      local.cap_trials = cap.trials;
      local.capped_max_demand = cap.residual.maxDemand();
      chosen = cap.picked;
      RoundsResult rounds = multiCoverRounds(cap.residual, localRatioCover);
      for (std::size_t r : rounds.chosen) chosen.push_back(cap.residual_origin[r]);
      local.round_weight = rounds.round_weight;
    } else {
      local.capped_max_demand = local.max_demand;
      RoundsResult rounds = multiCoverRounds(r2m, localRatioCover);
      chosen = rounds.chosen;
      local.round_weight = rounds.round_weight;
    }
    if (!r2m.covered(chosen)) throw AssertionFailure("light", "class cover misses some demand");
  }
  local.weight = r2m.weightOf(chosen);
  std::vector<std::size_t> sources;
  for (std::size_t r : chosen) sources.push_back(r2m.rects[r].source_rect);
  std::sort(sources.begin(), sources.end());
  if (audit) *audit = local;
  return sources;
}

Cover mergeLightCovers(const R2cInstance& r2c, const ResidualClassified& rc, const PointPartition& part,
                       const std::vector<std::vector<std::size_t>>& per_class) {
  Cover merged;
  for (const auto& cover : per_class)
    for (std::size_t r : cover) merged.insert(r);
  for (std::size_t p : part.light) {
    Cost supplied = 0;
    for (std::size_t r : merged.rects)
      if (r2c.rects[r].covers(r2c.points[p])) supplied += rc.rounded_capacity[r];
    if (supplied < rc.rounded_demand[p]) {
      std::ostringstream os;
      os << "light point " << p << " receives rounded capacity " << supplied << " < " << rc.rounded_demand[p];
      throw AssertionFailure("merge", os.str());
    }
  }
  return merged;
}

}  // namespace geosched
