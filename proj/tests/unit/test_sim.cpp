#include "rlss/sim/desired.hpp"
#include "rlss/sim/forest.hpp"
#include "rlss/sim/scenario.hpp"
#include "rlss/sim/simulator.hpp"

#include "test_helpers.hpp"

#include <doctest.h>

using namespace rlss;
using namespace rlss::sim;

namespace {

Vec v2(double x, double y) {
  Vec v(2);
  v << x, y;
  return v;
}

RobotSpec makeRobot(const Vec& start, const Vec& goal) {
  RobotSpec r;
  r.base = ConvexShape::box(Vec::Constant(start.size(), 0.1));
  r.start = start;
  r.goal = goal;
  r.derivative_limits = {2.0, 3.0};
  r.continuity = 1;
  return r;
}

Scenario lineSwapScenario() {
  Scenario sc;
  sc.name = "line-swap";
  sc.dimension = 2;
  sc.workspace_box = AlignedBox(Vec::Constant(2, -6.0), Vec::Constant(2, 6.0));
  // Opposite directions along the same corridor. The lanes are offset and of
  // different lengths: an exactly self-symmetric configuration would let the
  // deterministic planners mirror each other indefinitely.
  sc.robots.push_back(makeRobot(v2(-2, 0), v2(2, 0)));
  sc.robots.push_back(makeRobot(v2(2.2, 0.18), v2(-2.6, 0.18)));
  sc.rlss.horizon = 3.0;
  sc.rlss.step_size = 0.5;
  sc.rlss.bezier_degree = 8;
  sc.max_sim_time = 30.0;
  return sc;
}

}  // namespace

TEST_CASE("two robots swapping on a line reach their goals without collisions") {
  const Scenario sc = lineSwapScenario();
  RunOptions options;
  options.collect_logs = true;
  const SimResult result = runSimulation(sc, Algo::Rlss, options);
  CHECK(result.metrics.terminated_by == "all_settled");
  CHECK(result.metrics.numCollisionRobots() == 0);
  CHECK(result.metrics.numDeadlocked() == 0);
  CHECK(result.metrics.numGoalReached() == 2);
  CHECK(result.metrics.totalSvmInfeasible() == 0);
  for (const auto& r : result.metrics.robots) {
    REQUIRE(r.nav_duration.has_value());
    CHECK(*r.nav_duration > 0.0);
  }
  // The trajectory log covers both robots at every logged iteration.
  CHECK(result.rows.size() >= 4);
  CHECK(!result.splines.empty());
}

TEST_CASE("robot starting at its goal settles immediately") {
  Scenario sc;
  sc.dimension = 2;
  sc.name = "degenerate";
  sc.workspace_box = AlignedBox(Vec::Constant(2, -3.0), Vec::Constant(2, 3.0));
  sc.robots.push_back(makeRobot(v2(1, 1), v2(1, 1)));
  sc.max_sim_time = 10.0;
  const SimResult result = runSimulation(sc, Algo::Rlss);
  CHECK(result.metrics.iterations <= 2);
  CHECK(result.metrics.numGoalReached() == 1);
  CHECK(result.metrics.numDeadlocked() == 0);
}

TEST_CASE("classifyRobot") {
  const Vec goal = v2(0, 0);
  SUBCASE("stationary near the goal is goal reached") {
    std::vector<std::pair<double, Vec>> history;
    for (int i = 0; i <= 15; ++i) history.push_back({0.1 * i, v2(0.1, 0.0)});
    CHECK(classifyRobot(history, goal) == RobotStatus::GoalReached);
  }
  SUBCASE("stationary far from the goal for a second is deadlocked") {
    std::vector<std::pair<double, Vec>> history;
    for (int i = 0; i <= 12; ++i) history.push_back({0.1 * i, v2(5.0, 0.0)});
    CHECK(classifyRobot(history, goal) == RobotStatus::Deadlocked);
  }
  SUBCASE("slow but moving robots stay active") {
    std::vector<std::pair<double, Vec>> history;
    for (int i = 0; i <= 12; ++i) history.push_back({0.1 * i, v2(5.0 - 0.002 * i, 0.0)});
    CHECK(classifyRobot(history, goal) == RobotStatus::Active);
  }
  SUBCASE("too little history cannot be deadlocked") {
    std::vector<std::pair<double, Vec>> history{{0.0, v2(5, 0)}, {0.1, v2(5, 0)}};
    CHECK(classifyRobot(history, goal) == RobotStatus::Active);
  }
}

TEST_CASE("forest generation") {
  ForestSpec spec;
  spec.radius = 7.5;
  spec.occupancy = 0.10;
  spec.tree_radius = 0.5;
  spec.resolution = 0.5;
  spec.dim = 2;
  SUBCASE("deterministic per seed") {
    const auto a = generateForest(spec, 42);
    const auto b = generateForest(spec, 42);
    REQUIRE(a.size() == b.size());
    for (size_t i = 0; i < a.size(); ++i) {
      CHECK((a[i].min - b[i].min).norm() == 0.0);
      CHECK((a[i].max - b[i].max).norm() == 0.0);
    }
    const auto c = generateForest(spec, 43);
    bool identical = a.size() == c.size();
    if (identical) {
      for (size_t i = 0; i < a.size(); ++i) {
        if ((a[i].min - c[i].min).norm() != 0.0) identical = false;
      }
    }
    CHECK(!identical);
  }
  SUBCASE("boxes stay within the disk and respect the resolution") {
    const auto boxes = generateForest(spec, 7);
    CHECK(!boxes.empty());
    for (const AlignedBox& b : boxes) {
      CHECK((b.max - b.min).cwiseAbs().maxCoeff() == doctest::Approx(0.5));
      CHECK(b.center().norm() <= spec.radius + spec.resolution);
    }
  }
  SUBCASE("paper-scale 3d forest lands at the reported obstacle count scale") {
    ForestSpec paper;
    paper.radius = 15.0;
    paper.occupancy = 0.10;
    paper.tree_radius = 0.5;
    paper.resolution = 0.5;
    paper.dim = 3;
    paper.height = 1.5;
    for (uint64_t seed : {1ull, 2ull, 3ull}) {
      const auto boxes = generateForest(paper, seed);
      CHECK(boxes.size() >= 2099);  // 2332 - 10%
      CHECK(boxes.size() <= 2565);  // 2332 + 10%
    }
  }
}

TEST_CASE("desired trajectories") {
  const Workspace ws = Workspace::fromBox(AlignedBox(Vec::Constant(2, -8), Vec::Constant(2, 8)));
  RlssParams params;
  params.step_size = 0.5;
  const RobotSpec robot = makeRobot(v2(0, 0), v2(6, 0));

  SUBCASE("empty prior gives the straight segment at max velocity") {
    ObstacleIndex empty_idx;
    const auto d =
        computeDesiredTrajectory(robot, robot.start, PriorMap::Empty, empty_idx, ws, params);
    CHECK(d.totalDuration() == doctest::Approx(3.0));
    CHECK((d.eval(0.0) - v2(0, 0)).norm() <= 1e-12);
    CHECK((d.eval(3.0) - v2(6, 0)).norm() <= 1e-12);
    CHECK((d.eval(1.5) - v2(3, 0)).norm() <= 1e-12);
  }
  SUBCASE("full prior routes around a wall") {
    std::vector<AlignedBox> wall{AlignedBox(v2(2.5, -3.0), v2(3.5, 3.0))};
    const ObstacleIndex idx(wall, 0.5);
    const auto d =
        computeDesiredTrajectory(robot, robot.start, PriorMap::Full, idx, ws, params);
    double length = 0.0;
    for (const auto& piece : d.pieces) {
      length += (piece.ctrl.row(piece.degree()) - piece.ctrl.row(0)).norm();
    }
    CHECK(length > 6.0 + 0.5);  // detour is strictly longer than the straight line
    // The desired path is collision free against the wall.
    const double T = d.totalDuration();
    for (int s = 0; s <= 200; ++s) {
      const ConvexShape placed = placeShape(robot.base, d.eval(T * s / 200.0));
      CHECK(!intersectsBox(placed, wall[0]));
    }
  }
  SUBCASE("full prior without obstacles reduces to the straight line") {
    ObstacleIndex empty_idx;
    const auto d =
        computeDesiredTrajectory(robot, robot.start, PriorMap::Full, empty_idx, ws, params);
    CHECK(d.totalDuration() == doctest::Approx(3.0));
    const double T = d.totalDuration();
    for (int s = 0; s <= 20; ++s) {
      const double u = s / 20.0;
      CHECK((d.eval(u * T) - u * v2(6, 0)).norm() <= 1e-9);
    }
  }
}

TEST_CASE("metrics json") {
  SimMetrics m;
  m.scenario = "t";
  m.algorithm = "rlss";
  m.robots.resize(2);
  m.robots[0].goal_reached = true;
  m.robots[0].nav_duration = 3.5;
  m.robots[1].deadlocked = true;
  const std::string json = metricsToJson(m);
  CHECK(json.find("\"num_deadlocked\": 1") != std::string::npos);
  CHECK(json.find("\"num_goal_reached\": 1") != std::string::npos);
  CHECK(metricsToJson(m) == json);  // serialization is deterministic
}
