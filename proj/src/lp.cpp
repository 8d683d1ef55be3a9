#include "geosched/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace geosched {

namespace {

// Tableau over the dual. Columns: y_0..y_{m-1}, z_0..z_{n-1}, s_0..s_{n-1},
// then the right-hand side.
class DualTableau {
 public:
  DualTableau(std::span<const double> cost, std::span<const LinearRow> rows)
      : n_(cost.size()), m_(rows.size()), width_(m_ + 2 * n_ + 1), cells_(n_ * width_, 0.0),
        reduced_(width_, 0.0), basis_(n_) {
    for (std::size_t i = 0; i < m_; ++i) {
      for (const auto& [var, coef] : rows[i].terms) at(var, i) += coef;
      reduced_[i] = -rows[i].rhs;
    }
    for (std::size_t r = 0; r < n_; ++r) {
      at(r, m_ + r) = -1.0;
      at(r, m_ + n_ + r) = 1.0;
      at(r, width_ - 1) = cost[r];
      reduced_[m_ + r] = 1.0;
      basis_[r] = m_ + n_ + r;
    }
  }

  // Returns false when the dual is unbounded.
  bool solve(const LpOptions& options, std::size_t& pivots) {
    const double tol = options.tolerance;
    std::size_t degenerate_run = 0;
    for (pivots = 0; pivots < options.max_pivots; ++pivots) {
      const bool bland = degenerate_run > 50;
      std::size_t enter = width_;
      double best = -tol;
      for (std::size_t j = 0; j + 1 < width_; ++j) {
        if (reduced_[j] < best) {
          enter = j;
          if (bland) break;
          best = reduced_[j];
        }
      }
      if (enter == width_) return true;

      std::size_t leave = n_;
      double ratio = std::numeric_limits<double>::infinity();
      for (std::size_t r = 0; r < n_; ++r) {
        const double a = at(r, enter);
        if (a <= tol) continue;
        const double q = at(r, width_ - 1) / a;
        if (q < ratio - tol || (q <= ratio + tol && leave < n_ && basis_[r] < basis_[leave])) {
          ratio = std::min(ratio, q);
          leave = r;
        }
      }
      if (leave == n_) return false;
      degenerate_run = ratio <= tol ? degenerate_run + 1 : 0;
      pivot(leave, enter);
    }
    throw std::runtime_error("LP pivot limit reached (" + std::to_string(options.max_pivots) + ")");
  }

  std::vector<double> primal() const {
    std::vector<double> x(n_);
    for (std::size_t r = 0; r < n_; ++r) x[r] = std::clamp(reduced_[m_ + n_ + r], 0.0, 1.0);
    return x;
  }

 private:
  double& at(std::size_t r, std::size_t c) { return cells_[r * width_ + c]; }
  double at(std::size_t r, std::size_t c) const { return cells_[r * width_ + c]; }

  void pivot(std::size_t row, std::size_t col) {
    double* prow = &cells_[row * width_];
    const double inv = 1.0 / prow[col];
    for (std::size_t c = 0; c < width_; ++c) prow[c] *= inv;
    prow[col] = 1.0;
    for (std::size_t r = 0; r < n_; ++r) {
      if (r == row) continue;
      double* cur = &cells_[r * width_];
      const double f = cur[col];
      if (f == 0.0) continue;
      for (std::size_t c = 0; c < width_; ++c) cur[c] -= f * prow[c];
      cur[col] = 0.0;
    }
    const double f = reduced_[col];
    if (f != 0.0) {
      for (std::size_t c = 0; c < width_; ++c) reduced_[c] -= f * prow[c];
      reduced_[col] = 0.0;
    }
    basis_[row] = col;
  }

  std::size_t n_, m_, width_;
  std::vector<double> cells_;
  std::vector<double> reduced_;
  std::vector<std::size_t> basis_;
};

}  // namespace

double maxRowViolation(std::span<const LinearRow> rows, std::span<const double> x) {
  double worst = 0.0;
  for (const LinearRow& row : rows) {
    double lhs = 0.0;
    for (const auto& [var, coef] : row.terms) lhs += coef * x[var];
    worst = std::max(worst, row.rhs - lhs);
  }
  return worst;
}

LpSolution solveBoxCoveringLp(std::span<const double> cost, std::span<const LinearRow> rows,
                              const LpOptions& options) {
  for (double c : cost)
    if (!(c >= 0.0) || !std::isfinite(c)) throw std::invalid_argument("covering LP needs finite nonnegative costs");

  std::vector<LinearRow> active;
  active.reserve(rows.size());
  for (const LinearRow& row : rows) {
    for (const auto& [var, coef] : row.terms) {
      if (var >= cost.size()) throw std::invalid_argument("LP row references unknown variable");
      if (!std::isfinite(coef)) throw std::invalid_argument("LP row has a non-finite coefficient");
    }
    // Rows that x = 0 already satisfies and that have no negative
    // coefficient can never bind.
    const bool nonneg = std::all_of(row.terms.begin(), row.terms.end(), [](const auto& t) { return t.second >= 0; });
    if (nonneg && row.rhs <= 0.0) continue;
    active.push_back(row);
  }

  LpSolution out;
  if (cost.empty()) {
    for (const LinearRow& row : active)
      if (row.rhs > options.tolerance) throw LpInfeasible("row with positive right-hand side and no variables");
    return out;
  }
  DualTableau tableau(cost, active);
  if (!tableau.solve(options, out.pivots)) throw LpInfeasible("covering LP is infeasible (dual unbounded)");
  out.x = tableau.primal();
  for (std::size_t r = 0; r < cost.size(); ++r) out.objective += cost[r] * out.x[r];
  return out;
}

}  // namespace geosched
