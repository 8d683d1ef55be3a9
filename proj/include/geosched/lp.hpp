#pragma once

// Small dense LP kernel for covering LPs of the form
//
//   min c.x  s.t.  A x >= b,  0 <= x <= 1,  with c >= 0.
//
// The solver runs primal simplex on the dual
//
//   max b.y - 1.z  s.t.  A^T y - z <= c,  y, z >= 0,
//
// whose all-slack basis is feasible because c >= 0. The primal solution is
// read off the reduced costs of the dual slacks. Sized for small
// instances (a few hundred variables, a few thousand rows).

#include <cstddef>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace geosched {

struct LinearRow {
  std::vector<std::pair<std::size_t, double>> terms;
  double rhs = 0.0;
};

struct LpSolution {
  std::vector<double> x;
  double objective = 0.0;
  std::size_t pivots = 0;
};

class LpInfeasible : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct LpOptions {
  double tolerance = 1e-10;
  std::size_t max_pivots = 200000;
};

LpSolution solveBoxCoveringLp(std::span<const double> cost, std::span<const LinearRow> rows,
                              const LpOptions& options = {});

/// Largest amount by which x violates any row.
double maxRowViolation(std::span<const LinearRow> rows, std::span<const double> x);

}  // namespace geosched
