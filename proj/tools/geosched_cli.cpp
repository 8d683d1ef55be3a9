// geosched: command-line front end.
//
// Exit codes: 0 success, 1 infeasible input or failed assertion, 2 usage
// error (bad flags, malformed or invalid documents, oracle caps).

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "geosched/gencache.hpp"
#include "geosched/generator.hpp"
#include "geosched/json_io.hpp"
#include "geosched/pipeline.hpp"

namespace {

using namespace geosched;
using io::Json;

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;

struct Infeasible : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string slurp(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot open " + path);
  return {std::istreambuf_iterator<char>(in), {}};
}

Json readDoc(const std::string& path) { return io::parse(slurp(path), path == "-" ? "stdin" : path); }

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInput("cannot write " + path);
  out << text;
}

std::uint64_t seedFallback() {
  if (const char* env = std::getenv("GEOSCHED_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw InvalidInput(std::string("GEOSCHED_SEED is not an unsigned integer: ") + env);
    }
  }
  return 1;
}

std::string markdownTable(const std::vector<RatioReport>& reports) {
  std::ostringstream os;
  os << "| instance | seed | n | OPT_GSP | OPT_R2C | LP | cover | schedule | sched/OPT | cover/LP |\n"
     << "|---|---|---|---|---|---|---|---|---|---|\n";
  auto opt = [](const auto& v) {
    std::ostringstream s;
    if (v) s << *v;
    else s << "-";
    return s.str();
  };
  for (const RatioReport& r : reports) {
    os << "| " << r.descriptor << " | " << r.seed << " | " << r.jobs << " | " << opt(r.opt_gsp) << " | "
       << opt(r.opt_r2c) << " | " << r.lp_value << " | " << r.cover_weight << " | " << r.schedule_cost << " | "
       << opt(r.scheduleRatio()) << " | " << r.coverToLp() << " |\n";
  }
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Approximation pipeline for preemptive scheduling via rectangle covering"};
  app.require_subcommand(1);

  unsigned threads = 1;
  bool allow_degenerate = false;
  app.add_option("--jobs", threads, "Worker thread cap")->check(CLI::PositiveNumber);
  app.add_flag("--allow-degenerate", allow_degenerate, "Allow tardiness deadlines before the release");

  std::string in_path = "-";
  std::string out_path;

  auto* gen = app.add_subcommand("gen", "Emit a random instance");
  std::string family = "wflow";
  GeneratorConfig config;
  std::optional<std::uint64_t> seed;
  gen->add_option("--family", family, "wflow | flow2 | tardiness | mixed")
      ->check(CLI::IsMember({"wflow", "flow2", "tardiness", "mixed"}));
  gen->add_option("--n", config.n, "Number of jobs")->check(CLI::PositiveNumber);
  gen->add_option("--max-size", config.max_size, "Largest job size")->check(CLI::PositiveNumber);
  gen->add_option("--max-release", config.max_release, "Latest release time")->check(CLI::PositiveNumber);
  gen->add_option("--min-weight", config.min_weight)->check(CLI::PositiveNumber);
  gen->add_option("--max-weight", config.max_weight)->check(CLI::PositiveNumber);
  gen->add_option("--seed", seed, "RNG seed (default: GEOSCHED_SEED or 1)");
  gen->add_option("--out", out_path);

  auto* reduce = app.add_subcommand("reduce", "Reduce an instance to rectangle cover");
  reduce->add_option("--in", in_path, "Instance JSON (- for stdin)");
  reduce->add_option("--out", out_path);

  auto* solve = app.add_subcommand("solve", "Run the full pipeline");
  PipelineOptions options;
  std::string heavy = "greedy";
  std::string audit_path;
  std::string pool_path;
  bool timings = false;
  solve->add_option("--in", in_path, "Instance JSON (- for stdin)");
  solve->add_option("--out", out_path, "Solution JSON");
  solve->add_option("--beta", options.beta, "Threshold, at most 1/12");
  solve->add_option("--seed", seed, "RNG seed (default: GEOSCHED_SEED or 1)");
  solve->add_option("--heavy-solver", heavy, "greedy | exact")->check(CLI::IsMember({"greedy", "exact"}));
  solve->add_option("--emit-audit", audit_path, "Write the ratio report here");
  solve->add_option("--emit-kc-pool", pool_path, "Write the final KC constraint pool here");
  solve->add_flag("--timings", timings, "Keep wall times in the audit record");

  auto* baseline = app.add_subcommand("baseline", "Exact optima for small instances");
  baseline->add_option("--in", in_path, "Instance JSON (- for stdin)");

  auto* cache = app.add_subcommand("cache", "Primal-dual cover for identical release times");
  cache->add_option("--in", in_path, "Instance or caching JSON (- for stdin)");
  cache->add_option("--out", out_path);

  auto* verify = app.add_subcommand("verify", "Check a cover or schedule against an instance");
  std::string solution_path;
  verify->add_option("--instance", in_path, "Instance JSON")->required();
  verify->add_option("--solution", solution_path, "Solution, cover or schedule JSON")->required();

  auto* report = app.add_subcommand("report", "Tabulate audit records");
  std::vector<std::string> audit_files;
  std::string format = "csv";
  report->add_option("audits", audit_files, "Audit JSON files")->required();
  report->add_option("--format", format, "csv | md")->check(CLI::IsMember({"csv", "md"}));
  report->add_option("--out", out_path);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*gen) {
      config.family = parseFamily(family);
      config.seed = seed.value_or(seedFallback());
      config.allow_degenerate = allow_degenerate;
      emit(out_path, io::dump(io::toJson(generate(config))));
    } else if (*reduce) {
      const GspInstance instance = io::gspFromJson(readDoc(in_path));
      emit(out_path, io::dump(io::toJson(reduceToR2C(instance))));
    } else if (*solve) {
      if (!(options.beta > 0.0)) throw InvalidInput("--beta must be positive");
      if (options.beta > 1.0 / 12.0) throw InvalidInput("--beta above 1/12 is not supported");
      options.seed = seed.value_or(seedFallback());
      options.heavy = heavy == "exact" ? HeavySolver::Exact : HeavySolver::Greedy;
      options.threads = threads;
      const GspInstance instance = io::gspFromJson(readDoc(in_path));
      const PipelineResult run = solvePipeline(instance, options);
      Json doc = {{"cover", io::coverToJson(run.r2c, run.rounding.cover)},
                  {"schedule", io::scheduleToJson(instance, run.schedule)},
                  {"schedule_cost", io::intValue(run.schedule_cost)},
                  {"cover_weight", io::intValue(run.cover_weight)},
                  {"lp_value", run.lp.solution.objective}};
      emit(out_path, io::dump(doc));
      if (!pool_path.empty()) emit(pool_path, io::dump(io::kcPoolToJson(run.r2c, run.lp)));
      if (!audit_path.empty()) {
        RatioReport r = auditPipeline(instance, options, in_path);
        if (!timings) r.wall_ms = 0.0;
        emit(audit_path, io::dump(io::toJson(r)));
      }
    } else if (*baseline) {
      const GspInstance instance = io::gspFromJson(readDoc(in_path));
      const GspOptimum opt = bruteForceGsp(instance);
      std::cout << "OPT " << opt.cost << "\n";
      const R2cInstance r2c = reduceToR2C(instance);
      if (r2c.rects.size() <= kExactCoverMaxSets)
        std::cout << "OPT_R2C " << exactCoverBB(toCoverProblem(r2c)).weight << "\n";
    } else if (*cache) {
      const Json doc = readDoc(in_path);
      const CachingInstance caching = doc.contains("jobs") ? fromIdenticalRelease(io::gspFromJson(doc))
                                                           : io::cachingFromJson(doc);
      const PrimalDualResult pd = primalDualCache(caching);
      Json ids = Json::array();
      for (std::size_t i : pd.chosen) ids.push_back(caching.intervals[i].id);
      emit(out_path, io::dump({{"intervals", ids}, {"weight", io::intValue(caching.weightOf(pd.chosen))},
                               {"dual_value", pd.dual_value}}));
    } else if (*verify) {
      const GspInstance instance = io::gspFromJson(readDoc(in_path));
      const Json doc = readDoc(solution_path);
      const R2cInstance r2c = reduceToR2C(instance);
      bool checked = false;
      const Json* cover_doc = doc.contains("cover") ? &doc["cover"] : (doc.contains("rects") ? &doc : nullptr);
      const Json* sched_doc = doc.contains("schedule") ? &doc["schedule"] : (doc.contains("slots") ? &doc : nullptr);
      if (cover_doc) {
        const CoverReport rep = verifyCover(r2c, io::coverFromJson(r2c, *cover_doc));
        if (!rep.feasible) {
          const R2cPoint& p = r2c.points[*rep.witness];
          throw Infeasible("cover misses point (" + std::to_string(p.x) + ", " + std::to_string(p.y) + ") by " +
                           std::to_string(-rep.slack[*rep.witness]));
        }
        std::cout << "cover feasible, weight " << rep.weight << "\n";
        checked = true;
      }
      if (sched_doc) {
        const Schedule sched = io::scheduleFromJson(instance, *sched_doc);
        if (auto why = scheduleViolation(instance, sched)) throw Infeasible("schedule infeasible: " + *why);
        const Cost cost = scheduleCost(instance, sched);
        if (doc.contains("schedule_cost") && io::readInt(doc, "schedule_cost") != cost)
          throw Infeasible("recorded schedule cost does not match, actual " + std::to_string(cost));
        std::cout << "schedule feasible, cost " << cost << "\n";
        checked = true;
      }
      if (!checked) throw InvalidInput(solution_path + " holds neither a cover nor a schedule");
    } else if (*report) {
      std::vector<RatioReport> reports;
      for (const std::string& f : audit_files) reports.push_back(io::reportFromJson(readDoc(f)));
      std::string text;
      if (format == "md") {
        text = markdownTable(reports);
      } else {
        text = io::csvHeader() + "\n";
        for (const RatioReport& r : reports) text += io::csvRow(r) + "\n";
      }
      emit(out_path, text);
    }
  } catch (const Infeasible& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return kFailed;
  } catch (const AssertionFailure& e) {
    std::cerr << "assertion failed " << e.what() << "\n";
    return kFailed;
  } catch (const CapExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const InvalidInput& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "failed: " << e.what() << "\n";
    return kFailed;
  }
  return kOk;
}
