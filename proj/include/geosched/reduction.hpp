#pragma once

// Scheduling -> capacitated rectangle cover (R2C).
//
// Every window [t1, t2] of breakpoint times becomes a demand point at
// (t1, t2 + 1) whose demand is the work released inside the window minus
// the slots it contains. Every nonempty class interval I_k^j becomes the
// rectangle [0, r_j] x I_k^j with capacity p_j and weight 2^k - 1. A
// rectangle covers the point iff the job is released no earlier than t1 and
// completing it at t2 + 1 falls in class k.

#include <optional>
#include <string>
#include <vector>

#include "geosched/gsp.hpp"

namespace geosched {

struct R2cPoint {
  Time x = 0;
  Time y = 0;
  Cost demand = 0;
  TimeInterval window;
};

struct R2cRect {
  std::string id;
  std::optional<std::size_t> job;
  int cls = 0;
  Time xmax = 0;
  TimeInterval y;
  Cost capacity = 1;
  Cost weight = 0;

  bool covers(Time px, Time py) const { return px <= xmax && y.contains(py); }
  bool covers(const R2cPoint& p) const { return covers(p.x, p.y); }
};

struct R2cInstance {
  Time horizon = 0;
  std::vector<R2cPoint> points;
  std::vector<R2cRect> rects;

  /// Indices of rectangles covering each point.
  std::vector<std::vector<std::size_t>> coverers() const;
  std::optional<std::size_t> rectIndex(const std::string& id) const;
};

/// Set of rectangle indices, kept sorted and unique.
struct Cover {
  std::vector<std::size_t> rects;

  void insert(std::size_t r);
  bool contains(std::size_t r) const;
  std::size_t size() const { return rects.size(); }
  friend bool operator==(const Cover&, const Cover&) = default;
};

Cost coverWeight(const R2cInstance& r2c, const Cover& cover);

/// Breakpoint set: releases, class-interval endpoints and endpoint + 1,
/// capped to [1, horizon], sorted.
std::vector<Time> breakpoints(const GspInstance& instance);

/// Points sorted by (x, y); rectangles by (job, class). Zero-demand points are
/// dropped. Rectangle ids are "{job}:{class}".
R2cInstance reduceToR2C(const GspInstance& instance);

struct CoverReport {
  bool feasible = true;
  /// Per point: total chosen capacity minus demand.
  std::vector<Cost> slack;
  Cost weight = 0;
  /// First point with negative slack.
  std::optional<std::size_t> witness;
};

CoverReport verifyCover(const R2cInstance& r2c, const Cover& cover);

/// For each job picks every nonempty class 0..k(j), where k(j) is the class of
/// its completion time in `schedule`.
Cover coverFromSchedule(const GspInstance& instance, const R2cInstance& r2c, const Schedule& schedule);

/// Sets d_j to the right end of the highest chosen class interval of job j
/// and schedules by EDF. Throws AssertionFailure (stage "reconstruct") with
/// the Hall witness if EDF fails, or if some job has no chosen rectangle.
Schedule scheduleFromCover(const GspInstance& instance, const R2cInstance& r2c, const Cover& cover);

/// The deadlines scheduleFromCover would use; nullopt for jobs without a
/// chosen rectangle.
std::vector<std::optional<Time>> coverDeadlines(const GspInstance& instance, const R2cInstance& r2c,
                                                const Cover& cover);

}  // namespace geosched
