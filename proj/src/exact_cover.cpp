#include "geosched/exact_cover.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "geosched/lp.hpp"

namespace geosched {

bool CoverProblem::feasible(const std::vector<std::size_t>& chosen) const {
  std::vector<Cost> got(demand.size(), 0);
  for (std::size_t s : chosen)
    for (const auto& [p, amount] : contributions.at(s)) got[p] += amount;
  for (std::size_t p = 0; p < demand.size(); ++p)
    if (got[p] < demand[p]) return false;
  return true;
}

Cost CoverProblem::weightOf(const std::vector<std::size_t>& chosen) const {
  Cost total = 0;
  for (std::size_t s : chosen) total = checked::add(total, weight.at(s));
  return total;
}

namespace {

class BranchAndBound {
 public:
  explicit BranchAndBound(const CoverProblem& problem) : problem_(problem), fix_(problem.numSets(), -1) {}

  ExactCover run() {
    std::vector<std::size_t> all(problem_.numSets());
    std::iota(all.begin(), all.end(), 0);
    if (!problem_.feasible(all)) throw InvalidInput("cover problem is infeasible even with every set");
    best_.chosen = all;
    best_.weight = problem_.weightOf(all);
    dfs();
    best_.nodes = nodes_;
    return best_;
  }

 private:
  void dfs() {
    ++nodes_;
    std::vector<std::size_t> ones;
    Cost fixed_weight = 0;
    for (std::size_t s = 0; s < fix_.size(); ++s)
      if (fix_[s] == 1) {
        ones.push_back(s);
        fixed_weight += problem_.weight[s];
      }
    if (fixed_weight >= best_.weight) return;

    std::vector<Cost> residual = problem_.demand;
    for (std::size_t s : ones)
      for (const auto& [p, amount] : problem_.contributions[s]) residual[p] -= amount;
    if (std::all_of(residual.begin(), residual.end(), [](Cost d) { return d <= 0; })) {
      best_.chosen = ones;
      best_.weight = fixed_weight;
      return;
    }

    std::vector<std::size_t> free_sets;
    std::vector<std::size_t> column(fix_.size(), 0);
    for (std::size_t s = 0; s < fix_.size(); ++s)
      if (fix_[s] == -1) {
        column[s] = free_sets.size();
        free_sets.push_back(s);
      }

    std::vector<LinearRow> rows(residual.size());
    std::vector<Cost> reachable(residual.size(), 0);
    for (std::size_t s : free_sets)
      for (const auto& [p, amount] : problem_.contributions[s]) {
        if (residual[p] <= 0) continue;
        const Cost truncated = std::min(amount, residual[p]);
        reachable[p] += truncated;
        rows[p].terms.emplace_back(column[s], static_cast<double>(truncated));
      }
    for (std::size_t p = 0; p < residual.size(); ++p) {
      if (residual[p] > 0 && reachable[p] < residual[p]) return;
      rows[p].rhs = static_cast<double>(std::max<Cost>(residual[p], 0));
    }

    std::vector<double> cost(free_sets.size());
    for (std::size_t i = 0; i < free_sets.size(); ++i) cost[i] = static_cast<double>(problem_.weight[free_sets[i]]);
    LpSolution lp;
    try {
      lp = solveBoxCoveringLp(cost, rows);
    } catch (const LpInfeasible&) {
      return;
    }
    const double bound = static_cast<double>(fixed_weight) + lp.objective;
    if (std::ceil(bound - 1e-6) >= static_cast<double>(best_.weight)) return;

    // Branch on the most fractional free variable; if the LP is integral,
    // try its support directly and branch on a used variable otherwise.
    std::size_t branch = free_sets.size();
    double best_frac = 1e-7;
    for (std::size_t i = 0; i < free_sets.size(); ++i) {
      const double f = std::min(lp.x[i], 1.0 - lp.x[i]);
      if (f > best_frac) {
        best_frac = f;
        branch = i;
      }
    }
    if (branch == free_sets.size()) {
      std::vector<std::size_t> candidate = ones;
      for (std::size_t i = 0; i < free_sets.size(); ++i)
        if (lp.x[i] > 0.5) candidate.push_back(free_sets[i]);
      if (problem_.feasible(candidate)) {
        const Cost w = problem_.weightOf(candidate);
        if (w < best_.weight) {
          std::sort(candidate.begin(), candidate.end());
          best_.chosen = candidate;
          best_.weight = w;
        }
        return;
      }
      branch = 0;
    }

    const std::size_t s = free_sets[branch];
    fix_[s] = 1;
    dfs();
    fix_[s] = 0;
    dfs();
    fix_[s] = -1;
  }

  const CoverProblem& problem_;
  std::vector<int> fix_;
  ExactCover best_;
  std::size_t nodes_ = 0;
};

}  // namespace

ExactCover exactCoverBB(const CoverProblem& problem) {
  if (problem.numSets() > kExactCoverMaxSets)
    throw CapExceeded("exact cover oracle is capped at " + std::to_string(kExactCoverMaxSets) + " sets, got " +
                      std::to_string(problem.numSets()));
  if (problem.contributions.size() != problem.numSets()) throw InvalidInput("contributions/weights size mismatch");
  return BranchAndBound(problem).run();
}

double fractionalCoverValue(const CoverProblem& problem) {
  std::vector<LinearRow> rows(problem.demand.size());
  for (std::size_t p = 0; p < problem.demand.size(); ++p) rows[p].rhs = static_cast<double>(problem.demand[p]);
  for (std::size_t s = 0; s < problem.numSets(); ++s)
    for (const auto& [p, amount] : problem.contributions[s])
      rows[p].terms.emplace_back(s, static_cast<double>(std::min(amount, problem.demand[p])));
  std::vector<double> cost(problem.weight.begin(), problem.weight.end());
  return solveBoxCoveringLp(cost, rows).objective;
}

}  // namespace geosched
