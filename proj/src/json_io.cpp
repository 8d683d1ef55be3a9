#include "geosched/json_io.hpp"

#include <charconv>
#include <cmath>
#include <iomanip>
#include <sstream>

namespace geosched::io {

namespace {

constexpr std::int64_t kExactDoubleLimit = std::int64_t{1} << 53;

std::int64_t asInt(const Json& v, const std::string& what) {
  if (v.is_number_integer()) return v.get<std::int64_t>();
  if (v.is_string()) {
    const std::string& s = v.get_ref<const std::string&>();
    std::int64_t out = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    if (ec == std::errc() && ptr == s.data() + s.size() && !s.empty()) return out;
  }
  throw InvalidInput(what + ": expected an integer, got " + v.dump());
}

const Json& field(const Json& doc, const char* key) {
  if (!doc.is_object()) throw InvalidInput(std::string("expected an object holding '") + key + "'");
  auto it = doc.find(key);
  if (it == doc.end()) throw InvalidInput(std::string("missing field '") + key + "'");
  return *it;
}

const Json& arrayField(const Json& doc, const char* key) {
  const Json& v = field(doc, key);
  if (!v.is_array()) throw InvalidInput(std::string("field '") + key + "' must be an array");
  return v;
}

std::string stringField(const Json& doc, const char* key) {
  const Json& v = field(doc, key);
  if (!v.is_string()) throw InvalidInput(std::string("field '") + key + "' must be a string");
  return v.get<std::string>();
}

Json interval(const TimeInterval& iv) { return Json::array({intValue(iv.lo), intValue(iv.hi)}); }

TimeInterval intervalFrom(const Json& v, const char* key) {
  if (!v.is_array() || v.size() != 2) throw InvalidInput(std::string("field '") + key + "' must be [lo, hi]");
  return {asInt(v[0], key), asInt(v[1], key)};
}

std::string csvEscape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string fmt(double v) {
  if (std::isinf(v)) return "inf";
  std::ostringstream os;
  os << std::setprecision(10) << v;
  return os.str();
}

}  // namespace

Json parse(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InvalidInput(source + ": malformed JSON at byte " + std::to_string(e.byte) + ": " + e.what());
  }
}

std::string dump(const Json& doc) { return doc.dump(2) + "\n"; }

Json intValue(std::int64_t v) {
  if (v > -kExactDoubleLimit && v < kExactDoubleLimit) return v;
  return std::to_string(v);
}

std::int64_t readInt(const Json& doc, const char* key) { return asInt(field(doc, key), key); }

Json toJson(const WeightFunction& w) {
  return std::visit(
      [](const auto& f) -> Json {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, ConstantWeight>) {
          return {{"kind", "constant"}, {"w", intValue(f.w)}};
        } else if constexpr (std::is_same_v<T, DeadlineWeight>) {
          return {{"kind", "deadline"}, {"deadline", intValue(f.deadline)}, {"w", intValue(f.w)}};
        } else if constexpr (std::is_same_v<T, SquaredFlowWeight>) {
          return {{"kind", "squared_flow"}};
        } else {
          Json steps = Json::array();
          for (auto [t, v] : f.steps) steps.push_back(Json::array({intValue(t), intValue(v)}));
          return {{"kind", "table"}, {"steps", steps}};
        }
      },
      w);
}

WeightFunction weightFromJson(const Json& doc) {
  const std::string kind = stringField(doc, "kind");
  if (kind == "constant") return ConstantWeight{readInt(doc, "w")};
  if (kind == "deadline") return DeadlineWeight{readInt(doc, "deadline"), readInt(doc, "w")};
  if (kind == "squared_flow") return SquaredFlowWeight{};
  if (kind == "table") {
    TableWeight table;
    for (const Json& step : arrayField(doc, "steps")) {
      if (!step.is_array() || step.size() != 2) throw InvalidInput("table steps must be [time, increment] pairs");
      table.steps.emplace_back(asInt(step[0], "steps"), asInt(step[1], "steps"));
    }
    return table;
  }
  throw InvalidInput("unknown weight kind '" + kind + "' (expected constant, deadline, squared_flow or table)");
}

Json toJson(const GspInstance& instance) {
  Json jobs = Json::array();
  for (const Job& j : instance.jobs())
    jobs.push_back({{"id", j.id}, {"release", intValue(j.release)}, {"size", intValue(j.size)}, {"weight", toJson(j.weight)}});
  return {{"jobs", jobs}};
}

GspInstance gspFromJson(const Json& doc) {
  std::vector<Job> jobs;
  for (const Json& j : arrayField(doc, "jobs")) {
    Job job;
    job.id = stringField(j, "id");
    job.release = readInt(j, "release");
    job.size = readInt(j, "size");
    job.weight = weightFromJson(field(j, "weight"));
    jobs.push_back(std::move(job));
  }
  return GspInstance(std::move(jobs));
}

Json toJson(const R2cInstance& r2c) {
  Json points = Json::array();
  for (const R2cPoint& p : r2c.points)
    points.push_back({{"x", intValue(p.x)}, {"y", intValue(p.y)}, {"demand", intValue(p.demand)}, {"window", interval(p.window)}});
  Json rects = Json::array();
  for (const R2cRect& r : r2c.rects) {
    Json rect = {{"id", r.id}, {"class", r.cls}, {"xmax", intValue(r.xmax)}, {"y", interval(r.y)},
                 {"capacity", intValue(r.capacity)}, {"weight", intValue(r.weight)}};
    if (r.job) rect["job"] = *r.job;
    rects.push_back(std::move(rect));
  }
  return {{"horizon", intValue(r2c.horizon)}, {"points", points}, {"rects", rects}};
}

R2cInstance r2cFromJson(const Json& doc) {
  R2cInstance r2c;
  if (doc.contains("horizon")) r2c.horizon = readInt(doc, "horizon");
  for (const Json& p : arrayField(doc, "points")) {
    R2cPoint point{readInt(p, "x"), readInt(p, "y"), readInt(p, "demand"), {}};
    if (p.contains("window")) point.window = intervalFrom(p["window"], "window");
    if (point.demand < 0) throw InvalidInput("point demand must be nonnegative");
    r2c.points.push_back(point);
  }
  for (const Json& r : arrayField(doc, "rects")) {
    R2cRect rect;
    rect.id = stringField(r, "id");
    if (r.contains("class")) rect.cls = static_cast<int>(readInt(r, "class"));
    if (r.contains("job")) rect.job = static_cast<std::size_t>(readInt(r, "job"));
    rect.xmax = readInt(r, "xmax");
    rect.y = intervalFrom(field(r, "y"), "y");
    rect.capacity = readInt(r, "capacity");
    rect.weight = readInt(r, "weight");
    if (rect.capacity < 1) throw InvalidInput("rectangle " + rect.id + ": capacity must be positive");
    if (rect.weight < 0) throw InvalidInput("rectangle " + rect.id + ": weight must be nonnegative");
    r2c.rects.push_back(std::move(rect));
  }
  return r2c;
}

Json coverToJson(const R2cInstance& r2c, const Cover& cover) {
  Json ids = Json::array();
  for (std::size_t r : cover.rects) ids.push_back(r2c.rects.at(r).id);
  return {{"rects", ids}, {"weight", intValue(coverWeight(r2c, cover))}};
}

Cover coverFromJson(const R2cInstance& r2c, const Json& doc) {
  Cover cover;
  for (const Json& id : arrayField(doc, "rects")) {
    if (!id.is_string()) throw InvalidInput("cover entries must be rectangle ids");
    auto r = r2c.rectIndex(id.get<std::string>());
    if (!r) throw InvalidInput("cover names unknown rectangle " + id.get<std::string>());
    cover.insert(*r);
  }
  return cover;
}

Json scheduleToJson(const GspInstance& instance, const Schedule& schedule) {
  Json slots = Json::array();
  for (Time t = 1; t <= schedule.horizon(); ++t) {
    auto j = schedule.at(t);
    slots.push_back(j ? Json(instance.job(*j).id) : Json(nullptr));
  }
  return {{"horizon", intValue(schedule.horizon())}, {"slots", slots}};
}

Schedule scheduleFromJson(const GspInstance& instance, const Json& doc) {
  const Json& slots = arrayField(doc, "slots");
  Schedule schedule(static_cast<Time>(slots.size()));
  for (std::size_t i = 0; i < slots.size(); ++i) {
    if (slots[i].is_null()) continue;
    if (!slots[i].is_string()) throw InvalidInput("schedule slots hold job ids or null");
    schedule.assign(static_cast<Time>(i + 1), instance.indexOf(slots[i].get<std::string>()));
  }
  return schedule;
}

Json toJson(const CachingInstance& caching) {
  Json demands = Json::array();
  for (const CacheDemand& d : caching.demands) demands.push_back({{"t", intValue(d.t)}, {"demand", intValue(d.demand)}});
  Json intervals = Json::array();
  for (const CacheInterval& iv : caching.intervals)
    intervals.push_back({{"id", iv.id}, {"span", interval(iv.span)}, {"size", intValue(iv.size)}, {"weight", intValue(iv.weight)}});
  return {{"demands", demands}, {"intervals", intervals}};
}

CachingInstance cachingFromJson(const Json& doc) {
  CachingInstance out;
  for (const Json& d : arrayField(doc, "demands")) out.demands.push_back({readInt(d, "t"), readInt(d, "demand")});
  for (const Json& iv : arrayField(doc, "intervals")) {
    CacheInterval c{stringField(iv, "id"), intervalFrom(field(iv, "span"), "span"), readInt(iv, "size"),
                    readInt(iv, "weight")};
    if (c.size < 1 || c.weight < 0) throw InvalidInput("interval " + c.id + ": size must be positive, weight nonnegative");
    out.intervals.push_back(std::move(c));
  }
  return out;
}

Json toJson(const RatioReport& report) {
  auto opt = [](const std::optional<Cost>& v) { return v ? intValue(*v) : Json(nullptr); };
  auto ratio = [](const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); };
  return {{"descriptor", report.descriptor},
          {"seed", intValue(static_cast<std::int64_t>(report.seed))},
          {"jobs", report.jobs},
          {"horizon", intValue(report.horizon)},
          {"points", report.points},
          {"rects", report.rects},
          {"heavy_points", report.heavy_points},
          {"light_points", report.light_points},
          {"opt_gsp", opt(report.opt_gsp)},
          {"opt_r2c", opt(report.opt_r2c)},
          {"lp_value", report.lp_value},
          {"picked_weight", intValue(report.picked_weight)},
          {"cover_weight", intValue(report.cover_weight)},
          {"schedule_cost", intValue(report.schedule_cost)},
          {"kc_cuts", report.kc_cuts},
          {"schedule_ratio", ratio(report.scheduleRatio())},
          {"reduction_ratio", ratio(report.reductionRatio())},
          {"cover_to_lp", report.coverToLp()},
          {"wall_ms", report.wall_ms}};
}

RatioReport reportFromJson(const Json& doc) {
  RatioReport r;
  r.descriptor = stringField(doc, "descriptor");
  r.seed = static_cast<std::uint64_t>(readInt(doc, "seed"));
  r.jobs = static_cast<std::size_t>(readInt(doc, "jobs"));
  r.horizon = readInt(doc, "horizon");
  r.points = static_cast<std::size_t>(readInt(doc, "points"));
  r.rects = static_cast<std::size_t>(readInt(doc, "rects"));
  r.heavy_points = static_cast<std::size_t>(readInt(doc, "heavy_points"));
  r.light_points = static_cast<std::size_t>(readInt(doc, "light_points"));
  if (!field(doc, "opt_gsp").is_null()) r.opt_gsp = readInt(doc, "opt_gsp");
  if (!field(doc, "opt_r2c").is_null()) r.opt_r2c = readInt(doc, "opt_r2c");
  if (!field(doc, "lp_value").is_number()) throw InvalidInput("lp_value must be a number");
  r.lp_value = doc["lp_value"].get<double>();
  r.picked_weight = readInt(doc, "picked_weight");
  r.cover_weight = readInt(doc, "cover_weight");
  r.schedule_cost = readInt(doc, "schedule_cost");
  r.kc_cuts = static_cast<std::size_t>(readInt(doc, "kc_cuts"));
  if (doc.contains("wall_ms") && doc["wall_ms"].is_number()) r.wall_ms = doc["wall_ms"].get<double>();
  return r;
}

std::string csvHeader() {
  return "descriptor,seed,jobs,horizon,points,rects,heavy_points,light_points,opt_gsp,opt_r2c,lp_value,"
         "picked_weight,cover_weight,schedule_cost,kc_cuts,schedule_ratio,reduction_ratio,cover_to_lp";
}

std::string csvRow(const RatioReport& r) {
  auto opt = [](const auto& v) { return v ? fmt(static_cast<double>(*v)) : std::string(); };
  std::ostringstream os;
  os << csvEscape(r.descriptor) << ',' << r.seed << ',' << r.jobs << ',' << r.horizon << ',' << r.points << ','
     << r.rects << ',' << r.heavy_points << ',' << r.light_points << ',' << opt(r.opt_gsp) << ',' << opt(r.opt_r2c)
     << ',' << fmt(r.lp_value) << ',' << r.picked_weight << ',' << r.cover_weight << ',' << r.schedule_cost << ','
     << r.kc_cuts << ',' << opt(r.scheduleRatio()) << ',' << opt(r.reductionRatio()) << ',' << fmt(r.coverToLp());
  return os.str();
}

Json kcPoolToJson(const R2cInstance& r2c, const KcLpResult& result) {
  Json x = Json::object();
  for (std::size_t r = 0; r < r2c.rects.size(); ++r) x[r2c.rects[r].id] = result.solution.value(r);
  Json cuts = Json::array();
  for (const KcConstraint& c : result.cuts) {
    Json picked = Json::array();
    for (std::size_t r : c.picked) picked.push_back(r2c.rects[r].id);
    Json coeffs = Json::array();
    for (auto [r, v] : c.coefficients) coeffs.push_back(Json::array({r2c.rects[r].id, intValue(v)}));
    cuts.push_back({{"point", c.point}, {"picked", picked}, {"rhs", intValue(c.rhs)}, {"coefficients", coeffs}});
  }
  return {{"objective", result.solution.objective},
          {"iterations", result.iterations},
          {"history", result.history},
          {"base_rows", result.base_rows.size()},
          {"cuts", cuts},
          {"x", x}};
}

}  // namespace geosched::io
