#pragma once

// Natural covering LP for R2C strengthened by knapsack-cover inequalities,
// solved by cutting planes. Separation only considers the threshold set
// S_p = {r covering p : x_r >= beta} for each point p, which is exactly the
// inequality the rounding step consumes.

#include <optional>
#include <vector>

#include "geosched/lp.hpp"
#include "geosched/reduction.hpp"

namespace geosched {

/// sum_{r covers p, r not in S} min(c_r, d_p - c(S)) x_r >= d_p - c(S).
struct KcConstraint {
  std::size_t point = 0;
  std::vector<std::size_t> picked;  // S, sorted
  std::vector<std::pair<std::size_t, Cost>> coefficients;
  Cost rhs = 0;

  LinearRow row() const;
};

/// Builds the (p, S) inequality. rhs <= 0 means the inequality is void.
KcConstraint knapsackCover(const R2cInstance& r2c, std::size_t point, std::vector<std::size_t> picked);

struct FracSolution {
  std::vector<double> x;
  double objective = 0.0;

  /// Value clamped to [0, 1].
  double value(std::size_t r) const;
};

struct KcLpOptions {
  double beta = 1.0 / 12.0;
  double epsilon = 1e-7;
  /// Defaults to 50 * |points|.
  std::optional<std::size_t> iteration_cap;
};

struct KcLpResult {
  FracSolution solution;
  std::vector<LinearRow> base_rows;
  std::vector<KcConstraint> cuts;
  std::size_t iterations = 0;
  /// LP value after each solve; nondecreasing.
  std::vector<double> history;
};

class KcLpError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Threshold set S_p for point p under x.
std::vector<std::size_t> thresholdSet(const R2cInstance& r2c, const std::vector<std::vector<std::size_t>>& coverers,
                                      std::size_t point, const FracSolution& x, double beta);

KcLpResult solveKcLp(const R2cInstance& r2c, const KcLpOptions& options = {});

struct KcResidualReport {
  /// Per point: lhs - rhs of its (p, S_p) inequality (0 when void).
  std::vector<double> slack;
  double min_slack = 0.0;
  std::optional<std::size_t> worst_point;

  bool holds(double tolerance) const { return min_slack >= -tolerance; }
};

KcResidualReport checkKcResidual(const R2cInstance& r2c, const FracSolution& x, double beta);

}  // namespace geosched
