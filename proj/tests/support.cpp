#include "support.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <set>

namespace geosched::testing {

GspInstance twoJobs() {
  return GspInstance({{"a", 1, 2, ConstantWeight{1}}, {"b", 2, 1, ConstantWeight{2}}});
}

GspInstance makeInstance(std::vector<Job> jobs) { return GspInstance(std::move(jobs)); }

Cost enumerateGspOptimum(const GspInstance& instance) {
  const std::size_t n = instance.size();
  const Time horizon = instance.horizon();
  std::vector<Time> rem(n);
  Time work = 0;
  for (std::size_t j = 0; j < n; ++j) work += rem[j] = instance.job(j).size;
  std::vector<Time> done(n, 0);
  Cost best = std::numeric_limits<Cost>::max();

  std::function<void(Time, Time)> go = [&](Time t, Time left) {
    if (left == 0) {
      Cost c = 0;
      for (std::size_t j = 0; j < n; ++j) c += instance.cumulativeCost(j, done[j]);
      best = std::min(best, c);
      return;
    }
    if (t > horizon || horizon - t + 1 < left) return;
    for (std::size_t j = 0; j < n; ++j) {
      if (rem[j] == 0 || instance.job(j).release >= t) continue;
      --rem[j];
      const Time prev = done[j];
      done[j] = t;
      go(t + 1, left - 1);
      done[j] = prev;
      ++rem[j];
    }
    go(t + 1, left);
  };
  go(1, work);
  return best;
}

std::optional<Cost> enumerateCoverOptimum(const CoverProblem& problem) {
  const std::size_t k = problem.numSets();
  std::optional<Cost> best;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
    std::vector<std::size_t> chosen;
    for (std::size_t s = 0; s < k; ++s)
      if (mask >> s & 1) chosen.push_back(s);
    if (!problem.feasible(chosen)) continue;
    const Cost w = problem.weightOf(chosen);
    if (!best || w < *best) best = w;
  }
  return best;
}

std::vector<Cover> feasibleCovers(const R2cInstance& r2c) {
  const std::size_t k = r2c.rects.size();
  std::vector<Cover> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
    Cover c;
    for (std::size_t s = 0; s < k; ++s)
      if (mask >> s & 1) c.rects.push_back(s);
    bool ok = true;
    for (const R2cPoint& p : r2c.points) {
      Cost got = 0;
      for (std::size_t r : c.rects)
        if (r2c.rects[r].covers(p)) got += r2c.rects[r].capacity;
      if (got < p.demand) {
        ok = false;
        break;
      }
    }
    if (ok) out.push_back(std::move(c));
  }
  return out;
}

double fullKcLpValue(const R2cInstance& r2c) {
  std::vector<double> cost;
  for (const R2cRect& r : r2c.rects) cost.push_back(static_cast<double>(r.weight));
  std::vector<LinearRow> rows;
  for (const R2cPoint& p : r2c.points) {
    std::vector<std::size_t> cov;
    for (std::size_t r = 0; r < r2c.rects.size(); ++r)
      if (r2c.rects[r].covers(p)) cov.push_back(r);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << cov.size()); ++mask) {
      Cost cs = 0;
      for (std::size_t i = 0; i < cov.size(); ++i)
        if (mask >> i & 1) cs += r2c.rects[cov[i]].capacity;
      const Cost rhs = p.demand - cs;
      if (rhs <= 0) continue;
      LinearRow row;
      row.rhs = static_cast<double>(rhs);
      for (std::size_t i = 0; i < cov.size(); ++i)
        if (!(mask >> i & 1))
          row.terms.emplace_back(cov[i], static_cast<double>(std::min(r2c.rects[cov[i]].capacity, rhs)));
      rows.push_back(std::move(row));
    }
  }
  return solveBoxCoveringLp(cost, rows).objective;
}

Synthetic syntheticR2c(std::uint64_t seed, double beta) {
  std::mt19937_64 rng(seed);
  auto uni = [&](std::int64_t lo, std::int64_t hi) { return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng); };
  auto real = [&](double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); };
  static constexpr Cost kCaps[] = {1, 1, 1, 1, 2, 3, 4, 6, 9, 16};

  Synthetic s;
  const Time grid = 8;
  // Seeds alternate between mass on unit capacities (light points) and mass
  // spread over large capacities (heavy points).
  const bool heavy_regime = seed % 3 == 0;
  const std::size_t nrects = static_cast<std::size_t>(heavy_regime ? uni(50, 90) : uni(120, 200));
  for (std::size_t r = 0; r < nrects; ++r) {
    R2cRect rect;
    rect.id = "r" + std::to_string(r);
    rect.xmax = uni(heavy_regime ? 3 : 5, grid);
    const Time lo = uni(1, grid - 2);
    rect.y = {lo, std::min<Time>(grid, lo + uni(3, grid))};
    rect.capacity = uni(0, 9) < (heavy_regime ? 4 : 8) ? 1 : kCaps[uni(4, 9)];
    rect.weight = uni(1, 20);
    rect.cls = 0;
    s.r2c.rects.push_back(rect);
    double v;
    if (uni(0, 11) == 0)
      v = real(beta, 1.0);
    else if (heavy_regime)
      v = real(0.0, 1.6 * beta);
    else if (rect.capacity == 1)
      v = real(0.4 * beta, beta);
    else
      v = real(0.0, 0.1 * beta);
    s.x.x.push_back(v);
  }
  s.r2c.horizon = grid + 1;

  for (Time px = 1; px <= grid; px += 1) {
    for (Time py = 1; py <= grid; py += 1) {
      if (uni(0, 2) != 0) continue;
      Cost picked = 0;
      std::vector<std::size_t> rest;
      for (std::size_t r = 0; r < nrects; ++r) {
        if (!s.r2c.rects[r].covers(px, py)) continue;
        if (s.x.x[r] >= beta) picked += s.r2c.rects[r].capacity;
        else rest.push_back(r);
      }
      // Largest residual R with sum min(c_r, R) x_r >= R.
      Cost best = 0;
      Cost total = 0;
      for (std::size_t r : rest) total += s.r2c.rects[r].capacity;
      for (Cost R = 1; R <= total; ++R) {
        double lhs = 0.0;
        for (std::size_t r : rest) lhs += static_cast<double>(std::min(s.r2c.rects[r].capacity, R)) * s.x.x[r];
        if (lhs >= static_cast<double>(R) + 1e-9) best = R;
      }
      Cost residual = best > 0 ? uni(std::max<Cost>(1, best / 2), best) : 0;
      const Cost demand = picked + residual;
      if (demand <= 0) continue;
      s.r2c.points.push_back({px, py, demand, {px, py - 1}});
    }
  }
  double obj = 0.0;
  for (std::size_t r = 0; r < nrects; ++r) obj += static_cast<double>(s.r2c.rects[r].weight) * s.x.x[r];
  s.x.objective = obj;
  return s;
}

R2mInstance randomR2m(std::uint64_t seed, std::size_t rects, std::size_t points, bool unit_demand, double xlo,
                      double xhi) {
  std::mt19937_64 rng(seed);
  auto uni = [&](std::int64_t lo, std::int64_t hi) { return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng); };
  const Time grid = 12;
  R2mInstance b;
  b.cls = 0;
  for (std::size_t r = 0; r < rects; ++r) {
    const Time lo = uni(1, grid - 1);
    b.rects.push_back({uni(1, grid), {lo, std::min<Time>(grid, lo + uni(1, grid / 2))}, uni(0, 12), r});
    b.frac.push_back(std::uniform_real_distribution<double>(xlo, xhi)(rng));
  }
  std::set<std::pair<Time, Time>> seen;
  for (std::size_t i = 0; i < points * 4 && b.points.size() < points; ++i) {
    const Time x = uni(1, grid), y = uni(1, grid);
    if (!seen.insert({x, y}).second) continue;
    double mass = 0.0;
    std::size_t cov = 0;
    for (std::size_t r = 0; r < rects; ++r)
      if (x <= b.rects[r].xmax && b.rects[r].y.contains(y)) {
        mass += b.frac[r];
        ++cov;
      }
    if (cov == 0) continue;
    Cost d = static_cast<Cost>(std::floor(mass + 1e-9));
    if (unit_demand) d = 1;
    if (d <= 0) continue;
    b.points.push_back({x, y, d, b.points.size()});
  }
  if (unit_demand) {
    // Unit demands need fractional mass >= 1 on every point.
    for (std::size_t r = 0; r < rects; ++r) b.frac[r] = 1.0;
  }
  return b;
}

Time envelopeAt(std::span<const AnchoredRect> rects, double y) {
  Time best = 0;
  for (const AnchoredRect& r : rects)
    if (static_cast<double>(r.ylo) <= y && y <= static_cast<double>(r.yhi)) best = std::max(best, r.xmax);
  return best;
}

std::size_t faceCountOracle(std::span<const AnchoredRect> rects) {
  std::vector<Time> ys;
  for (const AnchoredRect& r : rects) {
    ys.push_back(r.ylo);
    ys.push_back(r.yhi);
  }
  std::sort(ys.begin(), ys.end());
  ys.erase(std::unique(ys.begin(), ys.end()), ys.end());
  std::size_t faces = 0;
  Time prev = 0;
  for (std::size_t i = 0; i + 1 < ys.size(); ++i) {
    const Time e = envelopeAt(rects, 0.5 * static_cast<double>(ys[i] + ys[i + 1]));
    if (e > 0 && e != prev) ++faces;
    prev = e;
  }
  return faces;
}

double harmonic(Cost d) {
  double h = 0.0;
  for (Cost i = 1; i <= d; ++i) h += 1.0 / static_cast<double>(i);
  return h;
}

}  // namespace geosched::testing
