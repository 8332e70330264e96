#include "rlss/env/obstacle_index.hpp"
#include "rlss/env/workspace.hpp"
#include "rlss/geometry/distance.hpp"

#include "test_helpers.hpp"

#include <doctest.h>

#include <set>

using namespace rlss;
using testing::Rng;
using testing::randomShape;
using testing::randomVec;

namespace {

Vec v2(double x, double y) {
  Vec v(2);
  v << x, y;
  return v;
}

std::vector<AlignedBox> randomBoxes(Rng& rng, int count, double extent) {
  std::vector<AlignedBox> boxes;
  for (int i = 0; i < count; ++i) {
    const Vec lo = randomVec(rng, 2, -extent, extent);
    boxes.emplace_back(lo, Vec(lo + randomVec(rng, 2, 0.1, 1.0)));
  }
  return boxes;
}

std::multiset<std::pair<double, double>> boxKeySet(const std::vector<AlignedBox>& boxes) {
  std::multiset<std::pair<double, double>> keys;
  for (const AlignedBox& b : boxes) keys.insert({b.min(0), b.min(1)});
  return keys;
}

}  // namespace

TEST_CASE("obstaclesNear") {
  SUBCASE("empty index yields nothing") {
    const ObstacleIndex idx;
    CHECK(idx.obstaclesNear(ConvexShape::box(Vec::Constant(2, 0.5)), 3.0).empty());
  }
  SUBCASE("margin includes and excludes by distance") {
    // Box at distance 1.5 from the unit-square region.
    std::vector<AlignedBox> boxes{AlignedBox(v2(2.0, -0.5), v2(3.0, 0.5))};
    const ObstacleIndex idx(boxes, 0.5);
    const ConvexShape region = ConvexShape::box(Vec::Constant(2, 0.5));
    CHECK(idx.obstaclesNear(region, 1.0).empty());
    CHECK(idx.obstaclesNear(region, 2.0).size() == 1);
  }
  SUBCASE("matches a brute-force linear scan on random scenes") {
    Rng rng(113);
    const std::vector<AlignedBox> boxes = randomBoxes(rng, 200, 8.0);
    const ObstacleIndex idx(boxes, 0.5);
    for (int trial = 0; trial < 30; ++trial) {
      const ConvexShape region = randomShape(rng, 2, randomVec(rng, 2, -6, 6), 1.2);
      const double margin = rng.uniform(0.0, 3.0);
      std::vector<AlignedBox> expected;
      for (const AlignedBox& b : boxes) {
        if (minDist(region, b) <= margin) expected.push_back(b);
      }
      const std::vector<AlignedBox> got = idx.obstaclesNear(region, margin);
      CHECK(boxKeySet(got) == boxKeySet(expected));
    }
  }
  SUBCASE("larger margins return supersets") {
    Rng rng(127);
    const std::vector<AlignedBox> boxes = randomBoxes(rng, 120, 6.0);
    const ObstacleIndex idx(boxes, 0.5);
    const ConvexShape region = randomShape(rng, 2, v2(0, 0), 1.0);
    const auto small = boxKeySet(idx.obstaclesNear(region, 0.7));
    const auto large = boxKeySet(idx.obstaclesNear(region, 2.1));
    for (const auto& key : small) CHECK(large.count(key) >= small.count(key));
  }
}

TEST_CASE("regionFree") {
  const Workspace ws = Workspace::fromBox(AlignedBox(v2(-5, -5), v2(5, 5)));
  SUBCASE("empty environment is free inside the workspace") {
    const ObstacleIndex idx;
    CHECK(regionFree(idx, ws, {}, ConvexShape::box(Vec::Constant(2, 0.5))));
  }
  SUBCASE("straddling a workspace face is not free") {
    const ObstacleIndex idx;
    const ConvexShape region =
        placeShape(ConvexShape::box(Vec::Constant(2, 0.5)), v2(4.8, 0.0));
    CHECK(!regionFree(idx, ws, {}, region));
  }
  SUBCASE("grazing versus overlapping a box") {
    std::vector<AlignedBox> boxes{AlignedBox(v2(1.0, -1.0), v2(2.0, 1.0))};
    const ObstacleIndex idx(boxes, 0.5);
    const ConvexShape grazing =
        placeShape(ConvexShape::box(Vec::Constant(2, 0.5)), v2(0.5 - 1e-3, 0.0));
    CHECK(regionFree(idx, ws, {}, grazing));
    const ConvexShape overlapping =
        placeShape(ConvexShape::box(Vec::Constant(2, 0.5)), v2(0.5 + 1e-3, 0.0));
    CHECK(!regionFree(idx, ws, {}, overlapping));
  }
  SUBCASE("robot shapes block the region") {
    const ObstacleIndex idx;
    const ConvexShape robot = placeShape(ConvexShape::box(Vec::Constant(2, 0.3)), v2(1, 0));
    CHECK(!regionFree(idx, ws, {robot}, ConvexShape::box(Vec::Constant(2, 1.0))));
    CHECK(regionFree(idx, ws, {robot}, ConvexShape::box(Vec::Constant(2, 0.5))));
  }
  SUBCASE("shrinking a free region keeps it free") {
    Rng rng(131);
    const std::vector<AlignedBox> boxes = randomBoxes(rng, 60, 4.0);
    const ObstacleIndex idx(boxes, 0.5);
    for (int trial = 0; trial < 50; ++trial) {
      const ConvexShape region = randomShape(rng, 2, randomVec(rng, 2, -4, 4), 1.0, 8);
      if (!regionFree(idx, ws, {}, region)) continue;
      // Hull of a vertex subset is contained in the original hull.
      std::vector<Vec> subset(region.vertices.begin(), region.vertices.begin() + 4);
      CHECK(regionFree(idx, ws, {}, ConvexShape(subset)));
    }
  }
}

TEST_CASE("workspace clearance") {
  const Workspace ws = Workspace::fromBox(AlignedBox(v2(-5, -5), v2(5, 5)));
  SUBCASE("interior shape has face clearance") {
    const ConvexShape shape = placeShape(ConvexShape::box(Vec::Constant(2, 0.5)), v2(1, 0));
    CHECK(ws.boundaryClearance(shape) == doctest::Approx(3.5));
  }
  SUBCASE("straddling shape has zero clearance") {
    const ConvexShape shape = placeShape(ConvexShape::box(Vec::Constant(2, 1.0)), v2(4.5, 0));
    CHECK(ws.boundaryClearance(shape) == 0.0);
  }
}
