#include "geosched/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <limits>
#include <map>
#include <sstream>

#include "geosched/parallel.hpp"

namespace geosched {

namespace {

using Clock = std::chrono::steady_clock;

double msSince(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

class GspDp {
 public:
  explicit GspDp(const GspInstance& instance) : in_(instance), n_(instance.size()) {
    radix_.resize(n_);
    std::size_t mult = 1;
    for (std::size_t j = 0; j < n_; ++j) {
      radix_[j] = mult;
      mult *= static_cast<std::size_t>(instance.job(j).size + 1);
    }
    states_ = mult;
  }

  GspOptimum solve() {
    std::vector<Time> rem(n_);
    for (std::size_t j = 0; j < n_; ++j) rem[j] = in_.job(j).size;
    GspOptimum out;
    out.cost = best(0, rem);
    out.schedule = Schedule(in_.horizon());
    Time t = 0;
    while (std::any_of(rem.begin(), rem.end(), [](Time r) { return r > 0; })) {
      const auto move = choice_.at(key(t, rem));
      if (move) {
        out.schedule.assign(t + 1, *move);
        --rem[*move];
      }
      ++t;
    }
    return out;
  }

 private:
  static constexpr Cost kInf = std::numeric_limits<Cost>::max() / 4;

  std::size_t key(Time t, const std::vector<Time>& rem) const {
    std::size_t k = 0;
    for (std::size_t j = 0; j < n_; ++j) k += radix_[j] * static_cast<std::size_t>(rem[j]);
    return static_cast<std::size_t>(t) * states_ + k;
  }

  // Minimum cost to finish the remaining work using slots t+1 .. T_H.
  Cost best(Time t, std::vector<Time>& rem) {
    if (std::all_of(rem.begin(), rem.end(), [](Time r) { return r == 0; })) return 0;
    if (t >= in_.horizon()) return kInf;
    const std::size_t k = key(t, rem);
    if (auto it = memo_.find(k); it != memo_.end()) return it->second;

    const Time slot = t + 1;
    Cost value = best(t + 1, rem);
    std::optional<std::size_t> move;
    for (std::size_t j = 0; j < n_; ++j) {
      if (rem[j] == 0 || in_.job(j).release >= slot) continue;
      --rem[j];
      Cost c = best(t + 1, rem);
      ++rem[j];
      if (c >= kInf) continue;
      if (rem[j] == 1) c += in_.cumulativeCost(j, slot);
      if (c < value) {
        value = c;
        move = j;
      }
    }
    memo_[k] = value;
    choice_[k] = move;
    return value;
  }

  const GspInstance& in_;
  std::size_t n_;
  std::vector<std::size_t> radix_;
  std::size_t states_ = 1;
  std::map<std::size_t, Cost> memo_;
  std::map<std::size_t, std::optional<std::size_t>> choice_;
};

void require(bool ok, const char* stage, const std::string& what) {
  if (!ok) throw AssertionFailure(stage, what);
}

}  // namespace

bool bruteForceApplies(const GspInstance& instance) {
  return instance.size() <= kBruteForceMaxJobs && instance.horizon() <= kBruteForceMaxHorizon;
}

GspOptimum bruteForceGsp(const GspInstance& instance) {
  if (!bruteForceApplies(instance)) {
    std::ostringstream os;
    os << "brute-force oracle needs n <= " << kBruteForceMaxJobs << " and horizon <= " << kBruteForceMaxHorizon
       << ", got n = " << instance.size() << ", horizon = " << instance.horizon();
    throw CapExceeded(os.str());
  }
  return GspDp(instance).solve();
}

CoverProblem toCoverProblem(const R2cInstance& r2c) {
  CoverProblem problem;
  for (const R2cPoint& p : r2c.points) problem.demand.push_back(p.demand);
  for (const R2cRect& r : r2c.rects) {
    problem.weight.push_back(r.weight);
    auto& contrib = problem.contributions.emplace_back();
    for (std::size_t p = 0; p < r2c.points.size(); ++p)
      if (r.covers(r2c.points[p])) contrib.emplace_back(p, r.capacity);
  }
  return problem;
}

RoundingResult roundR2c(const R2cInstance& r2c, const FracSolution& x, const PipelineOptions& options) {
  if (options.beta > 1.0 / 12.0 + 1e-15)
    throw InvalidInput("beta above 1/12 breaks the light-point coverage guarantee");

  RoundingResult out;
  out.rc = preprocess(r2c, x, options.beta, options.tolerance);
  out.partition = classify(r2c, out.rc, options.tolerance);

  Cost picked_weight = 0;
  for (std::size_t r : out.rc.picked.rects) picked_weight += r2c.rects[r].weight;
  double lp_value = 0.0;
  for (std::size_t r = 0; r < r2c.rects.size(); ++r) lp_value += static_cast<double>(r2c.rects[r].weight) * x.value(r);
  require(static_cast<double>(picked_weight) <= lp_value / options.beta + options.tolerance, "preprocess",
          "picked set outweighs LP / beta");
  for (std::size_t p = 0; p < r2c.points.size(); ++p) {
    const double slack = scaledInequalitySlack(r2c, out.rc, p);
    if (slack < -options.tolerance) {
      std::ostringstream os;
      os << "scaled-rounded inequality fails at point " << p << " by " << -slack;
      throw AssertionFailure("preprocess", os.str());
    }
  }

  // Heavy points.
  out.r3u = buildR3U(r2c, out.rc, out.partition);
  if (!out.r3u.points.empty()) {
    std::vector<std::size_t> picks;
    if (options.heavy == HeavySolver::Exact)
      picks = exactCoverBB(toCoverProblem(out.r3u)).chosen;
    else
      picks = lpGreedyCover(out.r3u, r2c);
    for (std::size_t c : picks) out.heavy.insert(out.r3u.cuboids[c].source_rect);
  }

  // Light points, one multi-cover instance per capacity class.
  const std::vector<int> classes = rectangleClasses(out.rc);
  std::vector<std::vector<std::size_t>> per_class(classes.size());
  out.light_classes.resize(classes.size());
  if (!out.partition.light.empty()) {
    parallelFor(classes.size(), options.threads, [&](std::size_t i) {
      const R2mInstance b = buildR2M(r2c, out.rc, out.partition, classes[i]);
      per_class[i] = solveLightClass(b, splitmix(options.seed ^ splitmix(static_cast<std::uint64_t>(classes[i]))),
                                     &out.light_classes[i]);
    });
  }
  out.light = mergeLightCovers(r2c, out.rc, out.partition, per_class);

  out.cover = out.rc.picked;
  for (std::size_t r : out.heavy.rects) out.cover.insert(r);
  for (std::size_t r : out.light.rects) out.cover.insert(r);
  return out;
}

PipelineResult solvePipeline(const GspInstance& instance, const PipelineOptions& options) {
  PipelineResult out;
  auto t0 = Clock::now();
  out.r2c = reduceToR2C(instance);
  out.stage_ms[0] = msSince(t0);

  t0 = Clock::now();
  out.lp = solveKcLp(out.r2c, {options.beta, 1e-7, std::nullopt});
  out.stage_ms[1] = msSince(t0);

  t0 = Clock::now();
  out.rounding = roundR2c(out.r2c, out.lp.solution, options);
  out.stage_ms[2] = msSince(t0);

  t0 = Clock::now();
  out.verification = verifyCover(out.r2c, out.rounding.cover);
  if (!out.verification.feasible) {
    std::ostringstream os;
    os << "final cover misses point " << *out.verification.witness << " by "
       << -out.verification.slack[*out.verification.witness];
    throw AssertionFailure("verify", os.str());
  }
  out.cover_weight = out.verification.weight;
  out.picked_weight = coverWeight(out.r2c, out.rounding.rc.picked);
  out.schedule = scheduleFromCover(instance, out.r2c, out.rounding.cover);
  out.schedule_cost = scheduleCost(instance, out.schedule);
  out.stage_ms[3] = msSince(t0);
  return out;
}

std::optional<double> RatioReport::scheduleRatio() const {
  if (!opt_gsp) return std::nullopt;
  if (*opt_gsp == 0) return schedule_cost == 0 ? 1.0 : std::numeric_limits<double>::infinity();
  return static_cast<double>(schedule_cost) / static_cast<double>(*opt_gsp);
}

std::optional<double> RatioReport::reductionRatio() const {
  if (!opt_gsp || !opt_r2c) return std::nullopt;
  if (*opt_gsp == 0) return *opt_r2c == 0 ? 1.0 : std::numeric_limits<double>::infinity();
  return static_cast<double>(*opt_r2c) / static_cast<double>(*opt_gsp);
}

double RatioReport::coverToLp() const {
  if (lp_value <= 0.0) return cover_weight == 0 ? 1.0 : std::numeric_limits<double>::infinity();
  return static_cast<double>(cover_weight) / lp_value;
}

RatioReport auditPipeline(const GspInstance& instance, const PipelineOptions& options, std::string descriptor) {
  const auto start = Clock::now();
  RatioReport report;
  report.descriptor = std::move(descriptor);
  report.seed = options.seed;
  report.jobs = instance.size();
  report.horizon = instance.horizon();

  const PipelineResult run = solvePipeline(instance, options);
  report.points = run.r2c.points.size();
  report.rects = run.r2c.rects.size();
  report.heavy_points = run.rounding.partition.heavy.size();
  report.light_points = run.rounding.partition.light.size();
  report.lp_value = run.lp.solution.objective;
  report.picked_weight = run.picked_weight;
  report.cover_weight = run.cover_weight;
  report.schedule_cost = run.schedule_cost;
  report.kc_cuts = run.lp.cuts.size();

  const KcResidualReport residual = checkKcResidual(run.r2c, run.lp.solution, options.beta);
  require(residual.holds(options.tolerance), "kc-lp", "returned solution violates a threshold KC inequality");
  require(report.schedule_cost <= report.cover_weight, "reconstruct", "schedule costs more than its cover");

  if (bruteForceApplies(instance)) report.opt_gsp = bruteForceGsp(instance).cost;
  if (run.r2c.rects.size() <= kExactCoverMaxSets) report.opt_r2c = exactCoverBB(toCoverProblem(run.r2c)).weight;

  if (report.opt_gsp) require(*report.opt_gsp <= report.schedule_cost, "oracle", "pipeline beat the exact optimum");
  if (report.opt_r2c) {
    require(report.lp_value <= static_cast<double>(*report.opt_r2c) + options.tolerance, "lp-bound",
            "LP value exceeds the integral R2C optimum");
    require(*report.opt_r2c <= report.cover_weight, "oracle", "pipeline cover beat the exact R2C optimum");
  }
  if (report.opt_gsp && report.opt_r2c) {
    std::ostringstream os;
    os << "OPT_GSP = " << *report.opt_gsp << ", OPT_R2C = " << *report.opt_r2c;
    require(*report.opt_gsp <= *report.opt_r2c && *report.opt_r2c <= 4 * *report.opt_gsp, "sandwich", os.str());
  }
  report.wall_ms = msSince(start);
  return report;
}

}  // namespace geosched
