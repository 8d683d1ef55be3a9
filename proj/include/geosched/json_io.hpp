#pragma once

// JSON documents for instances, covers, schedules and audit records.
//
// Integers are written as JSON numbers while |v| < 2^53 and as decimal
// strings beyond that; readers accept either form.

#include <string>
#include <vector>

#include <json.hpp>

#include "geosched/gencache.hpp"
#include "geosched/kc_lp.hpp"
#include "geosched/pipeline.hpp"

namespace geosched::io {

using Json = nlohmann::ordered_json;

/// Parses text; syntax errors become InvalidInput naming the byte offset.
Json parse(const std::string& text, const std::string& source = "input");
std::string dump(const Json& doc);

Json intValue(std::int64_t v);
std::int64_t readInt(const Json& doc, const char* key);

Json toJson(const WeightFunction& w);
WeightFunction weightFromJson(const Json& doc);

Json toJson(const GspInstance& instance);
GspInstance gspFromJson(const Json& doc);

Json toJson(const R2cInstance& r2c);
R2cInstance r2cFromJson(const Json& doc);

/// {"rects": [ids], "weight": w}
Json coverToJson(const R2cInstance& r2c, const Cover& cover);
Cover coverFromJson(const R2cInstance& r2c, const Json& doc);

/// {"horizon": T, "slots": [job id or null per slot]}
Json scheduleToJson(const GspInstance& instance, const Schedule& schedule);
Schedule scheduleFromJson(const GspInstance& instance, const Json& doc);

Json toJson(const CachingInstance& caching);
CachingInstance cachingFromJson(const Json& doc);

Json toJson(const RatioReport& report);
RatioReport reportFromJson(const Json& doc);

std::string csvHeader();
std::string csvRow(const RatioReport& report);

/// Final constraint pool and solution of the cutting-plane loop.
Json kcPoolToJson(const R2cInstance& r2c, const KcLpResult& result);

}  // namespace geosched::io
