#include "geosched/gsp.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <set>
#include <sstream>

namespace geosched {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void validateWeight(const Job& job) {
  std::visit(Overloaded{
                 [&](const ConstantWeight& w) {
                   if (w.w < 1) throw InvalidInput("job " + job.id + ": constant weight must be positive");
                 },
                 [&](const DeadlineWeight& w) {
                   if (w.w < 1) throw InvalidInput("job " + job.id + ": deadline weight must be positive");
                 },
                 [](const SquaredFlowWeight&) {},
                 [&](const TableWeight& w) {
                   for (std::size_t i = 0; i < w.steps.size(); ++i) {
                     if (w.steps[i].second < 0)
                       throw InvalidInput("job " + job.id + ": table increments must be nonnegative");
                     if (i > 0 && w.steps[i].first <= w.steps[i - 1].first)
                       throw InvalidInput("job " + job.id + ": table step times must strictly increase");
                   }
                 },
             },
             job.weight);
}

}  // namespace

Cost weightIncrement(const WeightFunction& w, Time release, Time t) {
  if (t <= release) return 0;
  return std::visit(Overloaded{
                        [](const ConstantWeight& c) { return c.w; },
                        [&](const DeadlineWeight& d) { return t > d.deadline ? d.w : Cost{0}; },
                        [&](const SquaredFlowWeight&) { return 2 * (t - release) - 1; },
                        [&](const TableWeight& tab) {
                          Cost value = 0;
                          for (const auto& [time, v] : tab.steps) {
                            if (time > t) break;
                            value = v;
                          }
                          return value;
                        },
                    },
                    w);
}

Cost cumulativeWeight(const WeightFunction& w, Time release, Time t) {
  if (t <= release) return 0;
  return std::visit(
      Overloaded{
          [&](const ConstantWeight& c) { return checked::mul(c.w, t - release); },
          [&](const DeadlineWeight& d) {
            Time start = std::max(d.deadline, release);
            return t > start ? checked::mul(d.w, t - start) : Cost{0};
          },
          [&](const SquaredFlowWeight&) { return checked::mul(t - release, t - release); },
          [&](const TableWeight& tab) {
            // Slots release+1..t, split at step boundaries.
            Cost total = 0;
            for (std::size_t i = 0; i < tab.steps.size(); ++i) {
              Time from = std::max(tab.steps[i].first, release + 1);
              Time to = i + 1 < tab.steps.size() ? std::min(tab.steps[i + 1].first - 1, t) : t;
              if (from > to) continue;
              total = checked::add(total, checked::mul(tab.steps[i].second, to - from + 1));
            }
            return total;
          },
      },
      w);
}

std::string weightKindName(const WeightFunction& w) {
  return std::visit(Overloaded{
                        [](const ConstantWeight&) { return std::string("constant"); },
                        [](const DeadlineWeight&) { return std::string("deadline"); },
                        [](const SquaredFlowWeight&) { return std::string("squared_flow"); },
                        [](const TableWeight&) { return std::string("table"); },
                    },
                    w);
}

GspInstance::GspInstance(std::vector<Job> jobs) : jobs_(std::move(jobs)) {
  if (jobs_.empty()) throw InvalidInput("instance needs at least one job");
  std::set<std::string> seen;
  Time max_release = 0;
  Time total_size = 0;
  for (const Job& job : jobs_) {
    if (!seen.insert(job.id).second) throw InvalidInput("duplicate job id " + job.id);
    if (job.release < 1) throw InvalidInput("job " + job.id + ": release must be >= 1");
    if (job.size < 1) throw InvalidInput("job " + job.id + ": size must be >= 1");
    validateWeight(job);
    max_release = std::max(max_release, job.release);
    total_size = checked::add(total_size, job.size);
  }
  horizon_ = checked::add(max_release, total_size);
}

Time GspInstance::maxSize() const {
  Time p = 0;
  for (const Job& j : jobs_) p = std::max(p, j.size);
  return p;
}

bool GspInstance::identicalReleases() const {
  return std::all_of(jobs_.begin(), jobs_.end(), [&](const Job& j) { return j.release == jobs_.front().release; });
}

std::size_t GspInstance::indexOf(std::string_view id) const {
  for (std::size_t j = 0; j < jobs_.size(); ++j)
    if (jobs_[j].id == id) return j;
  throw InvalidInput("unknown job id " + std::string(id));
}

Cost GspInstance::cumulativeCost(std::size_t j, Time t) const {
  if (j >= jobs_.size()) throw InvalidInput("unknown job index " + std::to_string(j));
  const Job& job = jobs_[j];
  if (t < job.release) throw InvalidInput("job " + job.id + ": cost queried before release");
  return cumulativeWeight(job.weight, job.release, t);
}

std::optional<TimeInterval> GspInstance::classInterval(std::size_t j, int k) const {
  if (j >= jobs_.size()) throw InvalidInput("unknown job index " + std::to_string(j));
  if (k < 0) throw InvalidInput("class index must be nonnegative");
  if (k > 62) return std::nullopt;
  const Time first = jobs_[j].release + 1;
  const Time last = horizon_;
  if (first > last) return std::nullopt;

  // Smallest t in [first, last + 1] with cost(t) >= bound (last + 1 if none).
  auto lowerBound = [&](Cost bound) {
    Time lo = first, hi = last + 1;
    while (lo < hi) {
      Time mid = lo + (hi - lo) / 2;
      if (cumulativeCost(j, mid) >= bound)
        hi = mid;
      else
        lo = mid + 1;
    }
    return lo;
  };

  Cost low = k == 0 ? 0 : Cost{1} << (k - 1);
  Cost high = k == 0 ? 0 : classWeight(k);
  Time begin = lowerBound(low);
  Time end = (high == std::numeric_limits<Cost>::max() ? last + 1 : lowerBound(high + 1)) - 1;
  if (begin > end) return std::nullopt;
  return TimeInterval{begin, end};
}

std::vector<ClassInterval> GspInstance::classIntervals(std::size_t j) const {
  std::vector<ClassInterval> out;
  const Job& job = jobs_.at(j);
  int top = costClass(cumulativeWeight(job.weight, job.release, horizon_));
  for (int k = 0; k <= top; ++k)
    if (auto span = classInterval(j, k)) out.push_back({k, *span});
  return out;
}

Time Schedule::processed(std::size_t j) const {
  return static_cast<Time>(std::count(slots_.begin(), slots_.end(), std::optional<std::size_t>(j)));
}

std::optional<Time> Schedule::completion(std::size_t j) const {
  for (std::size_t i = slots_.size(); i-- > 0;)
    if (slots_[i] == j) return static_cast<Time>(i + 1);
  return std::nullopt;
}

std::optional<std::string> scheduleViolation(const GspInstance& instance, const Schedule& schedule) {
  if (schedule.horizon() < 1) return "schedule has no slots";
  std::vector<Time> count(instance.size(), 0);
  for (Time t = 1; t <= schedule.horizon(); ++t) {
    auto j = schedule.at(t);
    if (!j) continue;
    if (*j >= instance.size()) return "slot " + std::to_string(t) + " holds unknown job index";
    const Job& job = instance.job(*j);
    if (t < job.release + 1)
      return "job " + job.id + " runs in slot " + std::to_string(t) + " before its release " +
             std::to_string(job.release);
    ++count[*j];
  }
  for (std::size_t j = 0; j < instance.size(); ++j) {
    const Job& job = instance.job(j);
    if (count[j] != job.size) {
      std::ostringstream os;
      os << "job " << job.id << " occupies " << count[j] << " slots, needs " << job.size;
      return os.str();
    }
  }
  return std::nullopt;
}

Cost scheduleCost(const GspInstance& instance, const Schedule& schedule) {
  if (auto why = scheduleViolation(instance, schedule)) throw InvalidInput("infeasible schedule: " + *why);
  Cost total = 0;
  for (std::size_t j = 0; j < instance.size(); ++j)
    total = checked::add(total, instance.cumulativeCost(j, *schedule.completion(j)));
  return total;
}

std::optional<TimeInterval> hallViolation(const GspInstance& instance, std::span<const Time> deadlines) {
  if (deadlines.size() != instance.size()) throw InvalidInput("one deadline per job required");
  for (const Job& a : instance.jobs()) {
    const Time s = a.release;
    for (Time t : deadlines) {
      if (t <= s) continue;
      Time load = 0;
      for (std::size_t j = 0; j < instance.size(); ++j)
        if (instance.job(j).release >= s && deadlines[j] <= t) load += instance.job(j).size;
      if (load > t - s) return TimeInterval{s, t};
    }
  }
  // Deadlines at or before the release are a degenerate window of width 0.
  for (std::size_t j = 0; j < instance.size(); ++j)
    if (deadlines[j] <= instance.job(j).release) return TimeInterval{instance.job(j).release, deadlines[j]};
  return std::nullopt;
}

EdfResult edfSchedule(const GspInstance& instance, std::span<const Time> deadlines) {
  if (deadlines.size() != instance.size()) throw InvalidInput("one deadline per job required");
  for (std::size_t j = 0; j < instance.size(); ++j) {
    const Job& job = instance.job(j);
    if (deadlines[j] < job.release + job.size) return {std::nullopt, TimeInterval{job.release, deadlines[j]}};
  }

  Time horizon = instance.horizon();
  for (Time d : deadlines) horizon = std::max(horizon, d);
  Schedule schedule(horizon);
  std::vector<Time> remaining(instance.size());
  for (std::size_t j = 0; j < instance.size(); ++j) remaining[j] = instance.job(j).size;

  for (Time t = 1; t <= horizon; ++t) {
    std::optional<std::size_t> pick;
    for (std::size_t j = 0; j < instance.size(); ++j) {
      if (remaining[j] == 0 || instance.job(j).release >= t) continue;
      if (!pick || deadlines[j] < deadlines[*pick] ||
          (deadlines[j] == deadlines[*pick] && instance.job(j).id < instance.job(*pick).id))
        pick = j;
    }
    if (!pick) continue;
    if (t > deadlines[*pick]) {
      auto witness = hallViolation(instance, deadlines);
      if (!witness) throw std::logic_error("EDF missed a deadline but the Hall condition holds");
      return {std::nullopt, witness};
    }
    schedule.assign(t, *pick);
    --remaining[*pick];
  }
  if (std::any_of(remaining.begin(), remaining.end(), [](Time r) { return r > 0; })) {
    auto witness = hallViolation(instance, deadlines);
    if (!witness) throw std::logic_error("EDF left work unfinished but the Hall condition holds");
    return {std::nullopt, witness};
  }
  // Trim to the instance horizon when nothing runs past it.
  if (horizon > instance.horizon()) {
    Schedule trimmed(instance.horizon());
    for (Time t = 1; t <= horizon; ++t) {
      if (!schedule.at(t)) continue;
      if (t > instance.horizon()) return {schedule, std::nullopt};
      trimmed.assign(t, schedule.at(t));
    }
    return {trimmed, std::nullopt};
  }
  return {schedule, std::nullopt};
}

}  // namespace geosched
