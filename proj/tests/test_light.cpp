#include <doctest.h>

#include <cmath>

#include "geosched/light.hpp"
#include "geosched/pipeline.hpp"
#include "support.hpp"

using namespace geosched;

namespace {

R2mInstance onePoint(std::vector<Cost> weights, Cost demand = 1) {
  R2mInstance b;
  b.points.push_back({1, 1, demand, 0});
  for (std::size_t i = 0; i < weights.size(); ++i) {
    b.rects.push_back({1, {1, 1}, weights[i], i});
    b.frac.push_back(1.0);
  }
  return b;
}

bool irreducible(const R2mInstance& b, const std::vector<std::size_t>& chosen) {
  for (std::size_t i = 0; i < chosen.size(); ++i) {
    std::vector<std::size_t> without = chosen;
    without.erase(without.begin() + static_cast<std::ptrdiff_t>(i));
    if (b.covered(without)) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("per-class instances floor the class mass") {
  R2cInstance r2c;
  r2c.points.push_back({1, 1, 8, {1, 0}});
  for (int i = 0; i < 4; ++i) r2c.rects.push_back({"r" + std::to_string(i), std::nullopt, 0, 1, {1, 1}, i < 3 ? 1 : 2, 1});
  ResidualClassified rc;
  rc.in_picked = {false, false, false, false};
  rc.residual = {8};
  rc.rounded_demand = {8};
  rc.point_class = {3};
  rc.rounded_capacity = {1, 1, 1, 2};
  rc.rect_class = {0, 0, 0, 1};
  rc.scaled = {0.9, 0.9, 0.9, 0.9};
  PointPartition part;
  part.kind = {PointKind::Light};
  part.light = {0};

  CHECK(rectangleClasses(rc) == std::vector<int>{0, 1});
  const R2mInstance b0 = buildR2M(r2c, rc, part, 0);
  REQUIRE(b0.points.size() == 1);
  CHECK(b0.points[0].demand == 2);
  CHECK(b0.rects.size() == 3);
  const R2mInstance b1 = buildR2M(r2c, rc, part, 1);
  CHECK(b1.points.empty());
  CHECK(b1.rects.size() == 1);
}

TEST_CASE("per-class demands add up for light points") {
  std::size_t light = 0;
  for (std::uint64_t seed = 1; seed <= 120; ++seed) {
    const testing::Synthetic s = testing::syntheticR2c(seed);
    const ResidualClassified rc = preprocess(s.r2c, s.x);
    const PointPartition part = classify(s.r2c, rc);
    std::vector<Cost> total(s.r2c.points.size(), 0);
    for (int cls : rectangleClasses(rc)) {
      const R2mInstance b = buildR2M(s.r2c, rc, part, cls);
      for (const R2mPoint& p : b.points) {
        if (cls < rc.point_class[p.source_point]) total[p.source_point] += (Cost{1} << cls) * p.demand;
        double mass = 0.0;
        for (std::size_t r = 0; r < b.rects.size(); ++r)
          if (b.rects[r].covers(p)) mass += b.frac[r];
        CHECK(mass >= static_cast<double>(p.demand) - 1e-9);
      }
    }
    for (std::size_t p : part.light) {
      ++light;
      const double low = lowClassMass(s.r2c, rc, p);
      CHECK(static_cast<double>(total[p]) >= low - static_cast<double>(rc.rounded_demand[p]) - 1e-6);
      CHECK(total[p] >= rc.rounded_demand[p]);
    }
  }
  CHECK(light > 0);
}

TEST_CASE("demand capping") {
  R2mInstance all = testing::randomR2m(3, 10, 8, false, 1.0, 1.0);
  REQUIRE_FALSE(all.points.empty());
  const CapResult r = capDemands(all, 1, 0.0);
  CHECK(r.picked.size() == all.rects.size());
  CHECK(r.residual.points.empty());

  // Sampling frequency follows 2x on small x.
  // Three points keep the cap threshold (8 ln 3) above the unit demands.
  R2mInstance half = onePoint({1, 1, 1, 1});
  half.points.push_back({1, 1, 1, 1});
  half.points.push_back({1, 1, 1, 2});
  half.frac = {0.1, 0.25, 0.4, 0.45};
  std::vector<int> hits(4, 0);
  const int trials = 4000;
  for (int t = 0; t < trials; ++t) {
    const CapResult c = capDemands(half, static_cast<std::uint64_t>(t) + 1, 8.0);
    CHECK(c.trials == 1);
    for (std::size_t r : c.picked) ++hits[r];
  }
  for (std::size_t r = 0; r < 4; ++r)
    CHECK(static_cast<double>(hits[r]) / trials == doctest::Approx(2.0 * half.frac[r]).epsilon(0.08));
}

TEST_CASE("multi-cover rounds") {
  R2mInstance d1 = onePoint({4, 2, 9});
  const RoundsResult one = multiCoverRounds(d1, localRatioCover);
  CHECK(one.round_weight.size() == 1);
  CHECK(d1.weightOf(one.chosen) == 2);

  CHECK(2.0 * testing::harmonic(3) * 6.0 == doctest::Approx(22.0));

  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    const R2mInstance b = testing::randomR2m(seed, 14, 10, false);
    if (b.points.empty()) continue;
    const RoundsResult r = multiCoverRounds(b, localRatioCover);
    CHECK(b.covered(r.chosen));
    const Cost d = b.maxDemand();
    CHECK(static_cast<double>(b.weightOf(r.chosen)) <= 2.0 * testing::harmonic(d) * b.fractionalCost() + 1e-6);
    const Cost opt = exactCoverBB(toCoverProblem(b)).weight;
    CHECK(b.weightOf(r.chosen) >= opt);
  }
}

TEST_CASE("local ratio examples") {
  const R2mInstance three = onePoint({3, 5, 7});
  const auto pick = localRatioCover(three);
  CHECK(pick == std::vector<std::size_t>{0});
  CHECK(three.weightOf(pick) == 3);

  R2mInstance span;
  span.points = {{1, 1, 1, 0}, {1, 2, 1, 1}};
  span.rects = {{1, {1, 2}, 5, 0}, {1, {1, 1}, 3, 1}, {1, {2, 2}, 3, 2}};
  span.frac = {1.0, 1.0, 1.0};
  const auto got = localRatioCover(span);
  CHECK(span.covered(got));
  CHECK(exactCoverBB(toCoverProblem(span)).weight == 5);
  CHECK(span.weightOf(got) <= 10);

  const R2mInstance zero = onePoint({0, 0});
  const auto z = localRatioCover(zero);
  CHECK(zero.covered(z));
  CHECK(zero.weightOf(z) == 0);

  R2mInstance orphan = onePoint({1});
  orphan.points.push_back({5, 5, 1, 1});
  CHECK_THROWS_AS(localRatioCover(orphan), InvalidInput);
}

TEST_CASE("local ratio stays within twice the LP and is irreducible") {
  for (std::uint64_t seed = 1; seed <= 150; ++seed) {
    const R2mInstance b = testing::randomR2m(seed, 6 + seed % 15, 12, true);
    if (b.points.empty()) continue;
    const auto got = localRatioCover(b);
    CHECK(b.covered(got));
    CHECK(irreducible(b, got));
    const CoverProblem pr = toCoverProblem(b);
    CHECK(static_cast<double>(b.weightOf(got)) <= 2.0 * fractionalCoverValue(pr) + 1e-6);
    CHECK(b.weightOf(got) <= 2 * exactCoverBB(pr).weight);
  }
}

TEST_CASE("merge of per-class covers") {
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    const testing::Synthetic s = testing::syntheticR2c(seed);
    const ResidualClassified rc = preprocess(s.r2c, s.x);
    const PointPartition part = classify(s.r2c, rc);
    const auto classes = rectangleClasses(rc);
    std::vector<std::vector<std::size_t>> per;
    for (int cls : classes) per.push_back(solveLightClass(buildR2M(s.r2c, rc, part, cls), seed));
    const Cover merged = mergeLightCovers(s.r2c, rc, part, per);
    Cover expect;
    for (const auto& c : per)
      for (std::size_t r : c) expect.insert(r);
    CHECK(merged == expect);
    if (classes.size() == 1) CHECK(merged.rects == per[0]);
  }

  // Dropping the per-class covers leaves light points short.
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    const testing::Synthetic s = testing::syntheticR2c(seed);
    const ResidualClassified rc = preprocess(s.r2c, s.x);
    const PointPartition part = classify(s.r2c, rc);
    if (part.light.empty()) continue;
    CHECK_THROWS_AS(mergeLightCovers(s.r2c, rc, part, {}), AssertionFailure);
    break;
  }
}
