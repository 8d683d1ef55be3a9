// Python bindings. Documents cross the boundary as JSON text; the package
// __init__ converts to and from dicts.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "geosched/gencache.hpp"
#include "geosched/generator.hpp"
#include "geosched/json_io.hpp"
#include "geosched/pipeline.hpp"

namespace py = pybind11;
using namespace geosched;
using io::Json;

namespace {

PipelineOptions makeOptions(double beta, std::uint64_t seed, const std::string& heavy, unsigned threads) {
  if (!(beta > 0.0) || beta > 1.0 / 12.0) throw InvalidInput("beta must lie in (0, 1/12]");
  if (heavy != "greedy" && heavy != "exact") throw InvalidInput("heavy solver must be greedy or exact");
  PipelineOptions o;
  o.beta = beta;
  o.seed = seed;
  o.heavy = heavy == "exact" ? HeavySolver::Exact : HeavySolver::Greedy;
  o.threads = threads;
  return o;
}

GspInstance gsp(const std::string& text) { return io::gspFromJson(io::parse(text, "instance")); }
R2cInstance r2c(const std::string& text) { return io::r2cFromJson(io::parse(text, "r2c")); }

std::string generateDoc(const std::string& family, std::size_t n, Time max_size, Time max_release, Cost min_weight,
                        Cost max_weight, std::uint64_t seed, bool allow_degenerate) {
  GeneratorConfig c;
  c.family = parseFamily(family);
  c.n = n;
  c.max_size = max_size;
  c.max_release = max_release;
  c.min_weight = min_weight;
  c.max_weight = max_weight;
  c.seed = seed;
  c.allow_degenerate = allow_degenerate;
  return io::dump(io::toJson(generate(c)));
}

std::string solveDoc(const std::string& instance_text, double beta, std::uint64_t seed, const std::string& heavy,
                     unsigned threads) {
  const GspInstance in = gsp(instance_text);
  const PipelineResult run = solvePipeline(in, makeOptions(beta, seed, heavy, threads));
  const Json doc = {{"cover", io::coverToJson(run.r2c, run.rounding.cover)},
                    {"schedule", io::scheduleToJson(in, run.schedule)},
                    {"schedule_cost", io::intValue(run.schedule_cost)},
                    {"cover_weight", io::intValue(run.cover_weight)},
                    {"lp_value", run.lp.solution.objective},
                    {"heavy_points", run.rounding.partition.heavy.size()},
                    {"light_points", run.rounding.partition.light.size()}};
  return io::dump(doc);
}

std::string auditDoc(const std::string& instance_text, double beta, std::uint64_t seed, const std::string& heavy,
                     const std::string& descriptor) {
  RatioReport r = auditPipeline(gsp(instance_text), makeOptions(beta, seed, heavy, 1), descriptor);
  r.wall_ms = 0.0;
  return io::dump(io::toJson(r));
}

std::string bruteForceDoc(const std::string& instance_text) {
  const GspInstance in = gsp(instance_text);
  const GspOptimum opt = bruteForceGsp(in);
  return io::dump(Json{{"cost", io::intValue(opt.cost)}, {"schedule", io::scheduleToJson(in, opt.schedule)}});
}

std::string exactCoverDoc(const std::string& r2c_text) {
  const R2cInstance inst = r2c(r2c_text);
  const ExactCover ex = exactCoverBB(toCoverProblem(inst));
  Cover c;
  for (std::size_t r : ex.chosen) c.insert(r);
  return io::dump(io::coverToJson(inst, c));
}

std::string kcLpDoc(const std::string& r2c_text, double beta) {
  const R2cInstance inst = r2c(r2c_text);
  const KcLpResult lp = solveKcLp(inst, {beta, 1e-7, std::nullopt});
  Json x = Json::object();
  for (std::size_t r = 0; r < inst.rects.size(); ++r) x[inst.rects[r].id] = lp.solution.value(r);
  return io::dump(Json{{"objective", lp.solution.objective},
                       {"x", x},
                       {"iterations", lp.iterations},
                       {"pool", io::kcPoolToJson(inst, lp)}});
}

std::string verifyCoverDoc(const std::string& r2c_text, const std::string& cover_text) {
  const R2cInstance inst = r2c(r2c_text);
  const CoverReport rep = verifyCover(inst, io::coverFromJson(inst, io::parse(cover_text, "cover")));
  Json doc = {{"feasible", rep.feasible}, {"weight", io::intValue(rep.weight)}};
  doc["witness"] = rep.witness ? Json(*rep.witness) : Json(nullptr);
  return io::dump(doc);
}

std::string cacheDoc(const std::string& text) {
  const Json doc = io::parse(text, "caching");
  const CachingInstance ci = doc.contains("jobs") ? fromIdenticalRelease(io::gspFromJson(doc)) : io::cachingFromJson(doc);
  const PrimalDualResult pd = primalDualCache(ci);
  Json ids = Json::array();
  for (std::size_t i : pd.chosen) ids.push_back(ci.intervals[i].id);
  return io::dump(Json{{"intervals", ids}, {"weight", io::intValue(ci.weightOf(pd.chosen))}, {"dual", pd.dual_value}});
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "geosched native core";

  static py::exception<InvalidInput> invalid(m, "InvalidInput", PyExc_ValueError);
  static py::exception<CapExceeded> cap(m, "CapExceeded", PyExc_RuntimeError);
  static py::exception<AssertionFailure> assertion(m, "AssertionFailure", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const InvalidInput& e) {
      py::set_error(invalid, e.what());
    } catch (const CapExceeded& e) {
      py::set_error(cap, e.what());
    } catch (const AssertionFailure& e) {
      py::set_error(assertion, e.what());
    }
  });

  m.def("generate", &generateDoc, py::arg("family"), py::arg("n"), py::arg("max_size"), py::arg("max_release"),
        py::arg("min_weight"), py::arg("max_weight"), py::arg("seed"), py::arg("allow_degenerate"));
  m.def("reduce", [](const std::string& text) { return io::dump(io::toJson(reduceToR2C(gsp(text)))); });
  m.def("solve", &solveDoc, py::arg("instance"), py::arg("beta"), py::arg("seed"), py::arg("heavy"),
        py::arg("threads"), py::call_guard<py::gil_scoped_release>());
  m.def("audit", &auditDoc, py::arg("instance"), py::arg("beta"), py::arg("seed"), py::arg("heavy"),
        py::arg("descriptor"), py::call_guard<py::gil_scoped_release>());
  m.def("brute_force", &bruteForceDoc);
  m.def("exact_cover", &exactCoverDoc);
  m.def("kc_lp", &kcLpDoc, py::arg("r2c"), py::arg("beta"));
  m.def("verify_cover", &verifyCoverDoc);
  m.def("primal_dual_cache", &cacheDoc);
  m.def("schedule_cost", [](const std::string& instance_text, const std::string& schedule_text) {
    const GspInstance in = gsp(instance_text);
    return scheduleCost(in, io::scheduleFromJson(in, io::parse(schedule_text, "schedule")));
  });
}
