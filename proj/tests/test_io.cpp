#include <doctest.h>

#include "geosched/json_io.hpp"
#include "support.hpp"

using namespace geosched;

TEST_CASE("instance documents round trip") {
  const GspInstance in({{"a", 1, 2, ConstantWeight{1}},
                        {"b", 2, 1, DeadlineWeight{3, 2}},
                        {"c", 1, 1, SquaredFlowWeight{}},
                        {"d", 3, 2, TableWeight{{{4, 1}, {6, 3}}}}});
  const std::string text = io::dump(io::toJson(in));
  const GspInstance back = io::gspFromJson(io::parse(text));
  CHECK(io::dump(io::toJson(back)) == text);
  for (Time t = 3; t <= in.horizon(); ++t)
    for (std::size_t j = 0; j < in.size(); ++j)
      if (t >= in.job(j).release) CHECK(in.cumulativeCost(j, t) == back.cumulativeCost(j, t));

  const io::Json plain = io::parse(
      R"({"jobs":[{"id":"a","release":1,"size":2,"weight":{"kind":"constant","w":1}},
                  {"id":"b","release":2,"size":1,"weight":{"kind":"constant","w":2}}]})");
  CHECK(io::gspFromJson(plain).horizon() == 5);
}

TEST_CASE("rectangle cover documents round trip") {
  const R2cInstance r2c = reduceToR2C(testing::twoJobs());
  const R2cInstance back = io::r2cFromJson(io::parse(io::dump(io::toJson(r2c))));
  CHECK(io::dump(io::toJson(back)) == io::dump(io::toJson(r2c)));

  Cover c;
  c.insert(*r2c.rectIndex("a:2"));
  c.insert(*r2c.rectIndex("a:1"));
  const io::Json doc = io::coverToJson(r2c, c);
  CHECK(doc["weight"] == 4);
  CHECK(io::coverFromJson(r2c, doc) == c);
  CHECK_THROWS_AS(io::coverFromJson(r2c, io::parse(R"({"rects":["zz:1"]})")), InvalidInput);

  const GspOptimum opt = bruteForceGsp(testing::twoJobs());
  const Schedule s = io::scheduleFromJson(testing::twoJobs(), io::scheduleToJson(testing::twoJobs(), opt.schedule));
  CHECK(s == opt.schedule);
}

TEST_CASE("caching documents round trip") {
  const GspInstance in({{"a", 1, 2, ConstantWeight{1}}, {"b", 1, 1, ConstantWeight{1}}});
  const CachingInstance c = fromIdenticalRelease(in);
  const CachingInstance back = io::cachingFromJson(io::parse(io::dump(io::toJson(c))));
  CHECK(io::dump(io::toJson(back)) == io::dump(io::toJson(c)));
}

TEST_CASE("wide integers and malformed input") {
  CHECK(io::intValue(42) == 42);
  const std::int64_t big = (std::int64_t{1} << 60) + 3;
  CHECK(io::intValue(big).is_string());
  const io::Json doc = {{"v", io::intValue(big)}};
  CHECK(io::readInt(doc, "v") == big);
  CHECK(io::readInt(io::parse(R"({"v":"17"})"), "v") == 17);
  CHECK_THROWS_AS(io::readInt(io::parse(R"({"v":"1x"})"), "v"), InvalidInput);
  CHECK_THROWS_AS(io::readInt(io::parse(R"({"v":1.5})"), "v"), InvalidInput);

  try {
    io::parse("{\"jobs\": [1, 2,, 3]}", "bad.json");
    FAIL("expected a parse error");
  } catch (const InvalidInput& e) {
    CHECK(std::string(e.what()).find("bad.json: malformed JSON at byte ") != std::string::npos);
  }
  CHECK_THROWS_AS(io::gspFromJson(io::parse(R"({"jobs":[{"id":"a","release":1,"size":1,"weight":{"kind":"cubic"}}]})")),
                  InvalidInput);
  CHECK_THROWS_AS(io::gspFromJson(io::parse(R"({"jobs":[{"id":"a","size":1}]})")), InvalidInput);
}

TEST_CASE("generator is deterministic and honours bounds") {
  for (Family f : {Family::WeightedFlow, Family::FlowSquared, Family::Tardiness, Family::Mixed}) {
    GeneratorConfig c;
    c.family = f;
    c.n = 6;
    c.seed = 7;
    CHECK(io::dump(io::toJson(generate(c))) == io::dump(io::toJson(generate(c))));
    c.seed = 8;
    const GspInstance in = generate(c);
    for (const Job& j : in.jobs()) {
      CHECK((j.release >= 1 && j.release <= c.max_release));
      CHECK((j.size >= 1 && j.size <= c.max_size));
      if (const auto* d = std::get_if<DeadlineWeight>(&j.weight)) CHECK(d->deadline >= j.release);
      if (f == Family::WeightedFlow) CHECK(std::holds_alternative<ConstantWeight>(j.weight));
      if (f == Family::FlowSquared) CHECK(std::holds_alternative<SquaredFlowWeight>(j.weight));
    }
  }
  CHECK(parseFamily("flow2") == Family::FlowSquared);
  CHECK_THROWS_AS(parseFamily("cubic"), InvalidInput);
  GeneratorConfig bad;
  bad.n = 0;
  CHECK_THROWS_AS(generate(bad), InvalidInput);
}

TEST_CASE("report rows") {
  RatioReport r = auditPipeline(testing::twoJobs(), {}, "two,jobs");
  const RatioReport back = io::reportFromJson(io::parse(io::dump(io::toJson(r))));
  CHECK(back.opt_gsp == r.opt_gsp);
  CHECK(back.cover_weight == r.cover_weight);
  const std::string row = io::csvRow(r);
  CHECK(row.rfind("\"two,jobs\",1,2,5,", 0) == 0);
  const std::string header = io::csvHeader();
  CHECK(std::count(header.begin(), header.end(), ',') == std::count(row.begin(), row.end(), ',') - 1);
}
