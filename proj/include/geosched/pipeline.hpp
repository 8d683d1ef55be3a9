#pragma once

// End-to-end solver (reduce, KC-LP, rounding, heavy and light covers,
// reconstruction) and the exact oracles used to audit it.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "geosched/heavy.hpp"
#include "geosched/light.hpp"

namespace geosched {

struct GspOptimum {
  Cost cost = 0;
  Schedule schedule;
};

inline constexpr std::size_t kBruteForceMaxJobs = 3;
inline constexpr Time kBruteForceMaxHorizon = 14;

/// Exact optimum by dynamic programming over (slot, remaining sizes).
/// Throws CapExceeded unless n <= 3 and T_H <= 14.
GspOptimum bruteForceGsp(const GspInstance& instance);

bool bruteForceApplies(const GspInstance& instance);

CoverProblem toCoverProblem(const R2cInstance& r2c);

enum class HeavySolver { Greedy, Exact };

struct PipelineOptions {
  double beta = 1.0 / 12.0;
  std::uint64_t seed = 1;
  HeavySolver heavy = HeavySolver::Greedy;
  unsigned threads = 1;
  double tolerance = 1e-6;
};

/// Output of rounding a fractional KC solution into an integral cover.
struct RoundingResult {
  ResidualClassified rc;
  PointPartition partition;
  R3uInstance r3u;
  Cover heavy;
  Cover light;
  std::vector<LightClassAudit> light_classes;
  Cover cover;  // picked set S, heavy cover and light cover together
};

/// Rounds `x` for `r2c`. Checks the rounding algebra on the way and throws
/// AssertionFailure tagged with the failing stage.
RoundingResult roundR2c(const R2cInstance& r2c, const FracSolution& x, const PipelineOptions& options);

struct PipelineResult {
  R2cInstance r2c;
  KcLpResult lp;
  RoundingResult rounding;
  CoverReport verification;
  Schedule schedule;
  Cost schedule_cost = 0;
  Cost cover_weight = 0;
  Cost picked_weight = 0;
  double stage_ms[4] = {0, 0, 0, 0};  // reduce, lp, round, reconstruct
};

PipelineResult solvePipeline(const GspInstance& instance, const PipelineOptions& options = {});

struct RatioReport {
  std::string descriptor;
  std::uint64_t seed = 0;
  std::size_t jobs = 0;
  Time horizon = 0;
  std::size_t points = 0;
  std::size_t rects = 0;
  std::size_t heavy_points = 0;
  std::size_t light_points = 0;
  std::optional<Cost> opt_gsp;
  std::optional<Cost> opt_r2c;
  double lp_value = 0.0;
  Cost picked_weight = 0;
  Cost cover_weight = 0;
  Cost schedule_cost = 0;
  std::size_t kc_cuts = 0;
  double wall_ms = 0.0;

  std::optional<double> scheduleRatio() const;   // schedule cost / OPT_GSP
  std::optional<double> reductionRatio() const;  // OPT_R2C / OPT_GSP
  double coverToLp() const;                      // cover weight / LP value
};

/// Runs the pipeline, invokes the oracles whose caps allow it, and asserts
/// every RatioReport invariant. Failures are AssertionFailure with a stage
/// tag ("sandwich", "lp-bound", "verify", "reconstruct", ...).
RatioReport auditPipeline(const GspInstance& instance, const PipelineOptions& options = {},
                          std::string descriptor = {});

}  // namespace geosched
