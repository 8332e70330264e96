#include "rlss/geometry/distance.hpp"
#include "rlss/planner/discrete_search.hpp"
#include "rlss/planner/goal_select.hpp"

#include "dijkstra_oracle.hpp"
#include "test_helpers.hpp"

#include <doctest.h>

using namespace rlss;
using testing::Rng;
using testing::randomVec;

namespace {

Vec v2(double x, double y) {
  Vec v(2);
  v << x, y;
  return v;
}

struct SearchWorld {
  ObstacleIndex obstacles;
  TaskInputs task;
  RlssParams params;
  Snapshot snap;

  SearchWorld(std::vector<AlignedBox> boxes, const Vec& start, double sigma,
              double ws_half = 10.0) {
    if (!boxes.empty()) obstacles = ObstacleIndex(std::move(boxes), 0.5);
    task.shape = ConvexShape::box(Vec::Constant(2, 0.1));
    task.workspace =
        Workspace::fromBox(AlignedBox(Vec::Constant(2, -ws_half), Vec::Constant(2, ws_half)));
    task.continuity = 1;
    task.derivative_limits = {2.0, 3.0};
    params.step_size = sigma;
    snap.obstacles = &obstacles;
    snap.position = start;
    snap.time = 0.0;
  }
};

double pathCost(const std::vector<SearchAction>& actions, double sigma, const Vec& start,
                const Vec& goal) {
  double cost = 0.0;
  Vec pos = start;
  Vec dir;
  for (const SearchAction& a : actions) {
    switch (a.type) {
      case SearchAction::Type::Rotate:
        cost += 1.0;
        dir = a.direction.cast<double>();
        break;
      case SearchAction::Type::Forward:
        cost += dir.norm();
        pos += sigma * dir;
        break;
      case SearchAction::Type::ReachGoal:
        cost += 1.0 + (pos - goal).norm() / sigma;
        pos = goal;
        break;
    }
  }
  return cost;
}

bool matchesLemmaRegex(const std::vector<SearchAction>& actions) {
  // ((ROTATE)(FORWARD)+)*(REACHGOAL)?
  size_t i = 0;
  while (i < actions.size() && actions[i].type == SearchAction::Type::Rotate) {
    ++i;
    size_t forwards = 0;
    while (i < actions.size() && actions[i].type == SearchAction::Type::Forward) {
      ++i;
      ++forwards;
    }
    if (forwards == 0) return false;
  }
  if (i < actions.size()) {
    if (actions[i].type != SearchAction::Type::ReachGoal) return false;
    ++i;
  }
  return i == actions.size();
}

}  // namespace

TEST_CASE("bestEffortAstar basics") {
  SUBCASE("goal equals start gives an empty plan") {
    SearchWorld world({}, v2(0, 0), 0.5);
    CHECK(bestEffortAstar(world.snap, world.task, world.params, v2(0, 0)).empty());
  }
  SUBCASE("free space off-grid goal uses a single REACHGOAL") {
    SearchWorld world({}, v2(0, 0), 1.0);
    const Vec goal = v2(2.5, 0.0);
    const auto actions = bestEffortAstar(world.snap, world.task, world.params, goal);
    REQUIRE(actions.size() == 1);
    CHECK(actions[0].type == SearchAction::Type::ReachGoal);
    CHECK(pathCost(actions, 1.0, v2(0, 0), goal) == doctest::Approx(1.0 + 2.5));
  }
}

TEST_CASE("bestEffortAstar matches the Dijkstra oracle on random grids") {
  Rng rng(139);
  int compared = 0;
  for (int trial = 0; compared < 50; ++trial) {
    REQUIRE(trial < 120);
    std::vector<AlignedBox> boxes;
    const int num_boxes = 3 + static_cast<int>(rng.next() % 12);
    for (int i = 0; i < num_boxes; ++i) {
      const Vec lo = randomVec(rng, 2, -4, 3);
      boxes.emplace_back(lo, Vec(lo + randomVec(rng, 2, 0.3, 1.6)));
    }
    SearchWorld world(boxes, v2(0, 0), 0.5, 6.0);
    // The robot's own start cell must be collision free.
    if (!regionFree(world.obstacles, world.task.workspace, {},
                    placeShape(world.task.shape, world.snap.position))) {
      continue;
    }
    const Vec goal = randomVec(rng, 2, -4.5, 4.5);
    const auto actions = bestEffortAstar(world.snap, world.task, world.params, goal);
    CHECK(matchesLemmaRegex(actions));
    const auto oracle =
        oracle::dijkstraGrid(world.snap, world.task, world.params, goal, 26);
    const bool reached =
        !actions.empty() && actions.back().type == SearchAction::Type::ReachGoal;
    if (std::isfinite(oracle.goal_cost)) {
      // Reachable: the A* cost must equal the oracle's optimum exactly.
      const double cost = pathCost(actions, 0.5, v2(0, 0), goal);
      if (reached || (goal - world.snap.position).norm() <= 1e-9) {
        CHECK(cost == doctest::Approx(oracle.goal_cost).epsilon(1e-12));
      } else {
        // The search gave up only if the goal sits outside its bounds.
        CHECK(!world.task.workspace.bounds.inflated(0.5).contains(goal));
      }
    } else {
      CHECK(!reached);
      // Best-effort terminus has the oracle's minimum heuristic.
      Vec end = world.snap.position;
      Vec dir;
      for (const SearchAction& a : actions) {
        if (a.type == SearchAction::Type::Rotate) dir = a.direction.cast<double>();
        if (a.type == SearchAction::Type::Forward) end += 0.5 * dir;
      }
      const double h_end = (end - goal).norm() / 0.5;
      CHECK(h_end == doctest::Approx(oracle.best_effort_heuristic).epsilon(1e-9));
    }
    ++compared;
  }
}

TEST_CASE("goal enclosed by obstacles falls back to the nearest reachable cell") {
  // Ring of boxes around the goal region.
  std::vector<AlignedBox> boxes;
  const double lo = 1.0, hi = 3.0;
  boxes.emplace_back(v2(lo, lo), v2(hi, lo + 0.2));
  boxes.emplace_back(v2(lo, hi - 0.2), v2(hi, hi));
  boxes.emplace_back(v2(lo, lo), v2(lo + 0.2, hi));
  boxes.emplace_back(v2(hi - 0.2, lo), v2(hi, hi));
  SearchWorld world(boxes, v2(0, 0), 0.5, 6.0);
  const Vec goal = v2(2.0, 2.0);
  const auto actions = bestEffortAstar(world.snap, world.task, world.params, goal);
  CHECK(matchesLemmaRegex(actions));
  CHECK((actions.empty() || actions.back().type != SearchAction::Type::ReachGoal));
  const auto oracle = oracle::dijkstraGrid(world.snap, world.task, world.params, goal, 26);
  CHECK(!std::isfinite(oracle.goal_cost));
}

TEST_CASE("extractSegments") {
  const double sigma = 1.0;
  SUBCASE("single straight run with prepend") {
    std::vector<SearchAction> actions(3);
    actions[0].type = SearchAction::Type::Rotate;
    actions[0].direction = Eigen::VectorXi(2);
    actions[0].direction << 1, 0;
    actions[1].type = SearchAction::Type::Forward;
    actions[2].type = SearchAction::Type::Forward;
    auto endpoints = extractSegments(actions, v2(0, 0), sigma, v2(9, 9));
    prependStart(endpoints);
    REQUIRE(endpoints.size() == 3);
    CHECK((endpoints[0] - v2(0, 0)).norm() == 0.0);
    CHECK((endpoints[1] - v2(0, 0)).norm() == 0.0);
    CHECK((endpoints[2] - v2(2, 0)).norm() == 0.0);
  }
  SUBCASE("rotation runs and REACHGOAL collapse into segments") {
    std::vector<SearchAction> actions(5);
    actions[0].type = SearchAction::Type::Rotate;
    actions[0].direction = Eigen::VectorXi(2);
    actions[0].direction << 1, 0;
    actions[1].type = SearchAction::Type::Forward;
    actions[2].type = SearchAction::Type::Rotate;
    actions[2].direction = Eigen::VectorXi(2);
    actions[2].direction << 0, 1;
    actions[3].type = SearchAction::Type::Forward;
    actions[4].type = SearchAction::Type::ReachGoal;
    auto endpoints = extractSegments(actions, v2(0, 0), sigma, v2(5, 5));
    prependStart(endpoints);
    REQUIRE(endpoints.size() == 5);  // 4 segments including the prepended one
    CHECK((endpoints[2] - v2(1, 0)).norm() == 0.0);
    CHECK((endpoints[3] - v2(1, 1)).norm() == 0.0);
    CHECK((endpoints[4] - v2(5, 5)).norm() == 0.0);
  }
  SUBCASE("empty action list stays in place") {
    auto endpoints = extractSegments({}, v2(3, 4), sigma, v2(3, 4));
    prependStart(endpoints);
    REQUIRE(endpoints.size() == 2);
    CHECK((endpoints[0] - v2(3, 4)).norm() == 0.0);
    CHECK((endpoints[1] - v2(3, 4)).norm() == 0.0);
  }
  SUBCASE("malformed sequences throw") {
    std::vector<SearchAction> bad(1);
    bad[0].type = SearchAction::Type::Forward;
    CHECK_THROWS_AS(extractSegments(bad, v2(0, 0), sigma, v2(1, 1)), std::logic_error);
  }
}

TEST_CASE("assignDurations") {
  SUBCASE("velocity-limited duration distribution") {
    // Total length 6, vmax 3, desired window 1 -> feasible duration 2.
    std::vector<Vec> endpoints{v2(0, 0), v2(0, 0), v2(3, 0), v2(6, 0)};
    const auto durations = assignDurations(endpoints, 1.0, 0.0, 3.0, 0.11);
    REQUIRE(durations.size() == 3);
    CHECK(durations[0] == doctest::Approx(0.11));
    CHECK(durations[1] == doctest::Approx(1.0));
    CHECK(durations[2] == doctest::Approx(1.0));
  }
  SUBCASE("desired duration already feasible") {
    std::vector<Vec> endpoints{v2(0, 0), v2(0, 0), v2(6, 0)};
    const auto durations = assignDurations(endpoints, 10.0, 0.0, 3.0, 0.11);
    REQUIRE(durations.size() == 2);
    CHECK(durations[1] == doctest::Approx(10.0));
  }
  SUBCASE("safety duration pins the first segment") {
    std::vector<Vec> endpoints{v2(0, 0), v2(0, 0), v2(1, 0), v2(2, 0)};
    const auto durations = assignDurations(endpoints, 5.0, 0.0, 2.0, 0.11);
    CHECK(durations[0] == doctest::Approx(0.11));
  }
}

TEST_CASE("selectGoal") {
  ObstacleIndex empty_idx;
  TaskInputs task;
  task.shape = ConvexShape::box(Vec::Constant(2, 0.1));
  task.workspace = Workspace::fromBox(AlignedBox(Vec::Constant(2, -20), Vec::Constant(2, 20)));
  task.continuity = 1;
  task.derivative_limits = {2.0};
  // Straight-line desired trajectory from (0,0) to (10,0) over 10 seconds.
  Mat ctrl(2, 2);
  ctrl << 0.0, 0.0, 10.0, 0.0;
  task.desired.pieces.emplace_back(10.0, ctrl);

  RlssParams params;
  params.horizon = 5.0;
  params.safety_distance = 0.2;
  params.replan_period = 0.1;

  Snapshot snap;
  snap.obstacles = &empty_idx;
  snap.position = v2(0, 0);
  snap.time = 0.0;

  SUBCASE("empty environment selects one horizon ahead") {
    const auto goal = selectGoal(snap, task, params);
    CHECK(goal.timestamp == doctest::Approx(5.0));
    CHECK((goal.goal - v2(5, 0)).norm() <= 1e-12);
  }
  SUBCASE("clamps to the desired trajectory end") {
    snap.time = 8.0;
    const auto goal = selectGoal(snap, task, params);
    CHECK(goal.timestamp == doctest::Approx(10.0));
    CHECK((goal.goal - v2(10, 0)).norm() <= 1e-12);
  }
  SUBCASE("skips blocked stretches to the nearest clear timestamp") {
    // Obstacle blocking d(t) around x in [4.5, 6] with sub-D clearance.
    std::vector<AlignedBox> boxes{AlignedBox(v2(4.5, -0.2), v2(6.0, 0.2))};
    const ObstacleIndex idx(boxes, 0.5);
    snap.obstacles = &idx;
    const auto goal = selectGoal(snap, task, params);
    // Exhaustive scan at 1 ms resolution for the nearest safe timestamp.
    double best_t = -1.0, best_gap = 1e100;
    for (int ms = 0; ms <= 10000; ++ms) {
      const double t = ms / 1000.0;
      const ConvexShape placed = placeShape(task.shape, task.desiredAt(t));
      const double dist = minDist(placed, boxes[0]);
      if (dist >= params.safety_distance &&
          task.workspace.boundaryClearance(placed) >= params.safety_distance) {
        const double gap = std::abs(t - 5.0);
        if (gap < best_gap - 1e-12) {
          best_gap = gap;
          best_t = t;
        }
      }
    }
    CHECK(std::abs(goal.timestamp - 5.0) <= best_gap + params.goalSearchStep() + 1e-9);
    const ConvexShape at_goal = placeShape(task.shape, task.desiredAt(goal.timestamp));
    CHECK(minDist(at_goal, boxes[0]) >= params.safety_distance - 1e-12);
    CHECK(best_t >= 0.0);
  }
  SUBCASE("falls back to the current position when nothing is safe") {
    std::vector<AlignedBox> boxes{AlignedBox(v2(-1, -1), v2(11, 1))};
    const ObstacleIndex idx(boxes, 0.5);
    snap.obstacles = &idx;
    snap.position = v2(-3, 0);
    const auto goal = selectGoal(snap, task, params);
    CHECK(goal.fallback);
    CHECK((goal.goal - snap.position).norm() == 0.0);
    CHECK(goal.timestamp == doctest::Approx(snap.time));
  }
}
