#pragma once

// Instance model for preemptive single-machine scheduling with monotone
// per-job completion costs.
//
// Slot convention: slot t covers the time span (t-1, t]. Job j may run in
// slots t >= r_j + 1, and a job "completes at t" when its last slot is t, so
// its cost is the sum of increments w_j(s) for s = r_j+1 .. t.

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "geosched/common.hpp"

namespace geosched {

struct ConstantWeight {
  Cost w = 1;
};

/// Increment 0 up to and including `deadline`, `w` afterwards.
struct DeadlineWeight {
  Time deadline = 0;
  Cost w = 1;
};

/// Increment 2(t - r) - 1, so the cumulative cost is the squared flow time.
struct SquaredFlowWeight {};

/// Step function: the increment at time s is the value of the last step whose
/// time is <= s, and 0 before the first step. Step times strictly increase.
struct TableWeight {
  std::vector<std::pair<Time, Cost>> steps;
};

using WeightFunction = std::variant<ConstantWeight, DeadlineWeight, SquaredFlowWeight, TableWeight>;

/// Per-slot increment w_j(t) for a job released at `release` (t > release).
Cost weightIncrement(const WeightFunction& w, Time release, Time t);

/// Sum of increments over slots release+1 .. t. Zero when t <= release.
Cost cumulativeWeight(const WeightFunction& w, Time release, Time t);

std::string weightKindName(const WeightFunction& w);

struct Job {
  std::string id;
  Time release = 1;
  Time size = 1;
  WeightFunction weight = ConstantWeight{};
};

/// Nonempty class interval I_k^j.
struct ClassInterval {
  int k = 0;
  TimeInterval span;
};

/// Immutable after construction. The horizon is max_j r_j + sum_j p_j; idling
/// past it never helps.
class GspInstance {
 public:
  explicit GspInstance(std::vector<Job> jobs);

  const std::vector<Job>& jobs() const { return jobs_; }
  const Job& job(std::size_t j) const { return jobs_.at(j); }
  std::size_t size() const { return jobs_.size(); }
  Time horizon() const { return horizon_; }
  Time maxSize() const;
  bool identicalReleases() const;

  /// Index of the job with this id; throws InvalidInput if unknown.
  std::size_t indexOf(std::string_view id) const;

  /// Cost of completing job j at time t (t >= r_j).
  Cost cumulativeCost(std::size_t j, Time t) const;
  Cost cumulativeCost(std::string_view id, Time t) const { return cumulativeCost(indexOf(id), t); }

  /// Maximal set of t in (r_j, T_H] whose completion cost has class k, found
  /// by binary search over the monotone cumulative cost.
  std::optional<TimeInterval> classInterval(std::size_t j, int k) const;

  /// All nonempty class intervals of job j in increasing k; they partition
  /// (r_j, T_H].
  std::vector<ClassInterval> classIntervals(std::size_t j) const;

 private:
  std::vector<Job> jobs_;
  Time horizon_ = 0;
};

/// Unit-slot preemptive schedule over slots 1..horizon.
class Schedule {
 public:
  Schedule() = default;
  explicit Schedule(Time horizon) : slots_(static_cast<std::size_t>(horizon)) {}

  Time horizon() const { return static_cast<Time>(slots_.size()); }
  std::optional<std::size_t> at(Time t) const { return slots_.at(static_cast<std::size_t>(t - 1)); }
  void assign(Time t, std::optional<std::size_t> job) { slots_.at(static_cast<std::size_t>(t - 1)) = job; }

  /// Number of slots held by job j.
  Time processed(std::size_t j) const;
  /// Last slot held by job j, or nullopt if it never runs.
  std::optional<Time> completion(std::size_t j) const;

  friend bool operator==(const Schedule&, const Schedule&) = default;

 private:
  std::vector<std::optional<std::size_t>> slots_;
};

/// First violated schedule invariant, or nullopt when the schedule is
/// feasible for the instance.
std::optional<std::string> scheduleViolation(const GspInstance& instance, const Schedule& schedule);

/// Sum over jobs of cumulativeCost(j, C_j); throws InvalidInput naming the
/// first violated invariant when the schedule is infeasible.
Cost scheduleCost(const GspInstance& instance, const Schedule& schedule);

struct EdfResult {
  std::optional<Schedule> schedule;
  /// Window [s, t] with sum of p_j over {r_j >= s, d_j <= t} exceeding t - s.
  std::optional<TimeInterval> witness;

  bool feasible() const { return schedule.has_value(); }
};

/// Earliest-deadline-first over unit slots; ties by job id. Deadlines are
/// indexed like instance.jobs().
EdfResult edfSchedule(const GspInstance& instance, std::span<const Time> deadlines);

/// Exhaustive Hall check over windows with s in {r_j} and t in {d_j}.
std::optional<TimeInterval> hallViolation(const GspInstance& instance, std::span<const Time> deadlines);

}  // namespace geosched
