#include "geosched/reduction.hpp"

#include <algorithm>
#include <sstream>

namespace geosched {

std::vector<std::vector<std::size_t>> R2cInstance::coverers() const {
  std::vector<std::vector<std::size_t>> out(points.size());
  for (std::size_t p = 0; p < points.size(); ++p)
    for (std::size_t r = 0; r < rects.size(); ++r)
      if (rects[r].covers(points[p])) out[p].push_back(r);
  return out;
}

std::optional<std::size_t> R2cInstance::rectIndex(const std::string& id) const {
  for (std::size_t r = 0; r < rects.size(); ++r)
    if (rects[r].id == id) return r;
  return std::nullopt;
}

void Cover::insert(std::size_t r) {
  auto it = std::lower_bound(rects.begin(), rects.end(), r);
  if (it == rects.end() || *it != r) rects.insert(it, r);
}

bool Cover::contains(std::size_t r) const { return std::binary_search(rects.begin(), rects.end(), r); }

Cost coverWeight(const R2cInstance& r2c, const Cover& cover) {
  Cost total = 0;
  for (std::size_t r : cover.rects) total = checked::add(total, r2c.rects.at(r).weight);
  return total;
}

std::vector<Time> breakpoints(const GspInstance& instance) {
  std::vector<Time> t;
  for (std::size_t j = 0; j < instance.size(); ++j) {
    t.push_back(instance.job(j).release);
    for (const ClassInterval& ci : instance.classIntervals(j)) {
      for (Time e : {ci.span.lo, ci.span.hi}) {
        t.push_back(e);
        t.push_back(e + 1);
      }
    }
  }
  std::erase_if(t, [&](Time v) { return v < 1 || v > instance.horizon(); });
  std::sort(t.begin(), t.end());
  t.erase(std::unique(t.begin(), t.end()), t.end());
  return t;
}

R2cInstance reduceToR2C(const GspInstance& instance) {
  R2cInstance out;
  out.horizon = instance.horizon();

  const std::vector<Time> times = breakpoints(instance);
  for (std::size_t a = 0; a < times.size(); ++a) {
    for (std::size_t b = a; b < times.size(); ++b) {
      const Time t1 = times[a], t2 = times[b];
      Cost released = 0;
      for (const Job& job : instance.jobs())
        if (job.release >= t1 && job.release <= t2) released += job.size;
      const Cost demand = released - (t2 - t1);
      if (demand <= 0) continue;
      out.points.push_back({t1, t2 + 1, demand, {t1, t2}});
    }
  }
  std::sort(out.points.begin(), out.points.end(),
            [](const R2cPoint& l, const R2cPoint& r) { return std::tie(l.x, l.y) < std::tie(r.x, r.y); });

  for (std::size_t j = 0; j < instance.size(); ++j) {
    const Job& job = instance.job(j);
    for (const ClassInterval& ci : instance.classIntervals(j)) {
      R2cRect rect;
      rect.id = job.id + ":" + std::to_string(ci.k);
      rect.job = j;
      rect.cls = ci.k;
      rect.xmax = job.release;
      rect.y = ci.span;
      rect.capacity = job.size;
      rect.weight = classWeight(ci.k);
      out.rects.push_back(std::move(rect));
    }
  }
  return out;
}

CoverReport verifyCover(const R2cInstance& r2c, const Cover& cover) {
  CoverReport report;
  report.weight = coverWeight(r2c, cover);
  report.slack.resize(r2c.points.size());
  for (std::size_t p = 0; p < r2c.points.size(); ++p) {
    Cost supplied = 0;
    for (std::size_t r : cover.rects)
      if (r2c.rects.at(r).covers(r2c.points[p])) supplied = checked::add(supplied, r2c.rects[r].capacity);
    report.slack[p] = supplied - r2c.points[p].demand;
    if (report.slack[p] < 0 && !report.witness) {
      report.feasible = false;
      report.witness = p;
    }
  }
  return report;
}

Cover coverFromSchedule(const GspInstance& instance, const R2cInstance& r2c, const Schedule& schedule) {
  if (auto why = scheduleViolation(instance, schedule)) throw InvalidInput("infeasible schedule: " + *why);
  Cover cover;
  for (std::size_t r = 0; r < r2c.rects.size(); ++r) {
    const R2cRect& rect = r2c.rects[r];
    if (!rect.job) continue;
    const Time completion = *schedule.completion(*rect.job);
    if (rect.cls <= costClass(instance.cumulativeCost(*rect.job, completion))) cover.insert(r);
  }
  return cover;
}

std::vector<std::optional<Time>> coverDeadlines(const GspInstance& instance, const R2cInstance& r2c,
                                                const Cover& cover) {
  std::vector<std::optional<Time>> deadline(instance.size());
  std::vector<int> top(instance.size(), -1);
  for (std::size_t r : cover.rects) {
    const R2cRect& rect = r2c.rects.at(r);
    if (!rect.job) continue;
    if (rect.cls > top[*rect.job]) {
      top[*rect.job] = rect.cls;
      deadline[*rect.job] = rect.y.hi;
    }
  }
  return deadline;
}

Schedule scheduleFromCover(const GspInstance& instance, const R2cInstance& r2c, const Cover& cover) {
  const auto chosen = coverDeadlines(instance, r2c, cover);
  std::vector<Time> deadlines(instance.size());
  for (std::size_t j = 0; j < instance.size(); ++j) deadlines[j] = chosen[j].value_or(instance.horizon());

  EdfResult edf = edfSchedule(instance, deadlines);
  if (!edf.feasible()) {
    std::ostringstream os;
    os << "cover admits no schedule: Hall window [" << edf.witness->lo << ", " << edf.witness->hi
       << "] is overloaded";
    throw AssertionFailure("reconstruct", os.str());
  }
  for (std::size_t j = 0; j < instance.size(); ++j) {
    if (chosen[j]) continue;
    if (instance.cumulativeCost(j, *edf.schedule->completion(j)) > 0)
      throw AssertionFailure("reconstruct",
                             "job " + instance.job(j).id + " has no chosen rectangle but a positive completion cost");
  }
  return *std::move(edf.schedule);
}

}  // namespace geosched
