#include "geosched/gencache.hpp"

#include <algorithm>
#include <limits>

#include "geosched/reduction.hpp"

namespace geosched {

std::optional<std::size_t> CachingInstance::firstDeficit(const std::vector<std::size_t>& chosen) const {
  for (std::size_t i = 0; i < demands.size(); ++i) {
    Cost got = 0;
    for (std::size_t c : chosen)
      if (intervals.at(c).span.contains(demands[i].t)) got += intervals[c].size;
    if (got < demands[i].demand) return i;
  }
  return std::nullopt;
}

Cost CachingInstance::weightOf(const std::vector<std::size_t>& chosen) const {
  Cost total = 0;
  for (std::size_t c : chosen) total = checked::add(total, intervals.at(c).weight);
  return total;
}

CoverProblem toCoverProblem(const CachingInstance& instance) {
  CoverProblem problem;
  for (const CacheDemand& d : instance.demands) problem.demand.push_back(d.demand);
  for (const CacheInterval& iv : instance.intervals) {
    problem.weight.push_back(iv.weight);
    auto& contrib = problem.contributions.emplace_back();
    for (std::size_t i = 0; i < instance.demands.size(); ++i)
      if (iv.span.contains(instance.demands[i].t)) contrib.emplace_back(i, iv.size);
  }
  return problem;
}

CachingInstance fromIdenticalRelease(const GspInstance& instance) {
  if (!instance.identicalReleases()) throw InvalidInput("generalized caching needs identical release times");
  const Time r = instance.job(0).release;
  Cost total = 0;
  for (const Job& j : instance.jobs()) total += j.size;

  CachingInstance out;
  for (Time t2 : breakpoints(instance)) {
    if (t2 < r) continue;
    const Time elapsed = t2 - r;
    if (total - elapsed > 0) out.demands.push_back({elapsed, total - elapsed});
  }
  for (std::size_t j = 0; j < instance.size(); ++j) {
    const Job& job = instance.job(j);
    for (const ClassInterval& ci : instance.classIntervals(j))
      out.intervals.push_back({job.id + ":" + std::to_string(ci.k), {ci.span.lo - r - 1, ci.span.hi - r - 1}, job.size,
                               classWeight(ci.k)});
  }
  return out;
}

PrimalDualResult primalDualCache(const CachingInstance& instance) {
  const std::size_t ni = instance.intervals.size();
  std::vector<double> reduced(ni);
  for (std::size_t i = 0; i < ni; ++i) reduced[i] = static_cast<double>(instance.intervals[i].weight);
  std::vector<bool> in(ni, false);
  PrimalDualResult out;

  auto deficit = [&](std::size_t d) {
    Cost got = 0;
    for (std::size_t i = 0; i < ni; ++i)
      if (in[i] && instance.intervals[i].span.contains(instance.demands[d].t)) got += instance.intervals[i].size;
    return instance.demands[d].demand - got;
  };

  for (;;) {
    std::size_t worst = instance.demands.size();
    Cost worst_deficit = 0;
    for (std::size_t d = 0; d < instance.demands.size(); ++d) {
      const Cost def = deficit(d);
      if (def > worst_deficit ||
          (def == worst_deficit && def > 0 && instance.demands[d].t < instance.demands[worst].t)) {
        worst = d;
        worst_deficit = def;
      }
    }
    if (worst == instance.demands.size()) break;

    const Time t = instance.demands[worst].t;
    double step = std::numeric_limits<double>::infinity();
    std::size_t hit = ni;
    for (std::size_t i = 0; i < ni; ++i) {
      if (in[i] || !instance.intervals[i].span.contains(t)) continue;
      const double rate = static_cast<double>(std::min(instance.intervals[i].size, worst_deficit));
      const double s = reduced[i] / rate;
      if (s < step) {
        step = s;
        hit = i;
      }
    }
    if (hit == ni)
      throw InvalidInput("caching instance is infeasible at time point " + std::to_string(t) + " (demand " +
                         std::to_string(instance.demands[worst].demand) + ")");
    out.dual_value += step * static_cast<double>(worst_deficit);
    for (std::size_t i = 0; i < ni; ++i) {
      if (in[i] || !instance.intervals[i].span.contains(t)) continue;
      reduced[i] -= step * static_cast<double>(std::min(instance.intervals[i].size, worst_deficit));
    }
    reduced[hit] = 0.0;
    in[hit] = true;
    out.raise_order.push_back(hit);
  }

  std::vector<std::size_t> chosen = out.raise_order;
  for (auto it = out.raise_order.rbegin(); it != out.raise_order.rend(); ++it) {
    std::vector<std::size_t> without;
    for (std::size_t c : chosen)
      if (c != *it) without.push_back(c);
    if (!instance.firstDeficit(without)) chosen = std::move(without);
  }
  std::sort(chosen.begin(), chosen.end());
  out.chosen = std::move(chosen);
  return out;
}

}  // namespace geosched
