#include "rlss/planner/planner.hpp"

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

TaskInputs makeTask(const Vec& start, const Vec& goal, double ws_half, int continuity) {
  TaskInputs task;
  task.shape = ConvexShape::box(Vec::Constant(start.size(), 0.1));
  task.workspace = Workspace::fromBox(
      AlignedBox(Vec::Constant(start.size(), -ws_half), Vec::Constant(start.size(), ws_half)));
  task.continuity = continuity;
  task.derivative_limits = {2.0, 3.0};
  Mat ctrl(2, start.size());
  ctrl.row(0) = start.transpose();
  ctrl.row(1) = goal.transpose();
  const double len = (goal - start).norm();
  task.desired.pieces.emplace_back(std::max(len / 2.0, 1e-3), ctrl);
  return task;
}

RlssParams deskParams() {
  RlssParams p;
  p.horizon = 3.0;
  p.safety_distance = 0.2;
  p.step_size = 0.5;
  p.safety_duration = 0.11;
  p.replan_period = 0.1;
  p.bezier_degree = 8;
  p.obstacle_check = 1.0;
  p.robot_check = 2.0;
  p.preferred_distance = 0.6;
  p.pref_weight = 0.3;
  return p;
}

/// Max violation of the kinematic constraint families (inequality rows plus
/// position-level equality rows) at the given variable assignment.
double kinematicViolation(const TrajectoryQp& tqp, const Vec& x) {
  double worst = 0.0;
  const Vec residual_ineq = tqp.prob.A * x - tqp.prob.b;
  for (int r = 0; r < residual_ineq.size(); ++r) {
    worst = std::max(worst, residual_ineq(r));
  }
  const Vec residual_eq = tqp.prob.E * x - tqp.prob.f;
  for (size_t r = 0; r < tqp.eq_rows.size(); ++r) {
    if (tqp.eq_rows[r].derivative == 0) {
      worst = std::max(worst, std::abs(residual_eq(static_cast<int>(r))));
    }
  }
  return worst;
}

Vec splineVariables(const PiecewiseTrajectory& traj, const TrajectoryQp& tqp) {
  Vec x(tqp.prob.n());
  for (int i = 0; i < tqp.num_pieces; ++i) {
    for (int p = 0; p <= tqp.degree; ++p) {
      for (int k = 0; k < tqp.dim; ++k) {
        x(tqp.varIndex(i, p, k)) = traj.pieces[i].ctrl(p, k);
      }
    }
  }
  return x;
}

}  // namespace

TEST_CASE("optimizeTrajectory on a straight two-segment plan") {
  const TaskInputs task = makeTask(v2(0, 0), v2(4, 0), 10.0, 1);
  const RlssParams params = deskParams();
  ObstacleIndex empty_idx;
  Snapshot snap;
  snap.obstacles = &empty_idx;
  snap.position = v2(0, 0);
  snap.state_derivatives = {v2(0, 0)};
  snap.time = 0.0;

  DiscretePlan plan;
  plan.endpoints = {v2(0, 0), v2(0, 0), v2(2, 0), v2(4, 0)};
  plan.durations = {0.11, 1.0, 1.0};

  const TrajOptResult result = optimizeTrajectory(plan, snap, task, params);
  REQUIRE(result.status == TrajOptStatus::Success);
  const PiecewiseTrajectory& traj = *result.trajectory;

  SUBCASE("initial state is interpolated exactly") {
    CHECK((traj.eval(0.0) - v2(0, 0)).norm() <= 1e-9);
    CHECK(traj.eval(0.0, 1).norm() <= 1e-7);
  }
  SUBCASE("junction continuity") {
    double t = 0.0;
    for (size_t i = 0; i + 1 < traj.pieces.size(); ++i) {
      t += traj.pieces[i].duration;
      const Vec pos_l = traj.pieces[i].eval(traj.pieces[i].duration);
      const Vec pos_r = traj.pieces[i + 1].eval(0.0);
      CHECK((pos_l - pos_r).norm() <= 1e-6);
      const Vec vel_l = traj.pieces[i].eval(traj.pieces[i].duration, 1);
      const Vec vel_r = traj.pieces[i + 1].eval(0.0, 1);
      CHECK((vel_l - vel_r).norm() <= 1e-6);
    }
  }
  SUBCASE("endpoint pulled toward the last segment end") {
    CHECK((traj.eval(traj.totalDuration()) - v2(4, 0)).norm() <= 0.5);
  }
}

TEST_CASE("discrete-plan spline satisfies the kinematic constraints (Remark 2)") {
  Rng rng(149);
  ObstacleIndex empty_idx;
  const RlssParams params = deskParams();
  int checked = 0;
  for (int trial = 0; checked < 30; ++trial) {
    REQUIRE(trial < 100);
    const int d = trial % 2 == 0 ? 2 : 3;
    const Vec start = randomVec(rng, d, -3, 3);
    const TaskInputs task = makeTask(start, Vec(randomVec(rng, d, -3, 3)), 10.0, 1);

    // Random scattered obstacle boxes away from the start cell.
    std::vector<AlignedBox> boxes;
    for (int i = 0; i < 10; ++i) {
      const Vec lo = randomVec(rng, d, -5, 4);
      const AlignedBox box(lo, Vec(lo + randomVec(rng, d, 0.2, 1.0)));
      if (minDist(placeShape(task.shape, start), box) > 0.3) boxes.push_back(box);
    }
    const ObstacleIndex idx(boxes, 0.5);

    Snapshot snap;
    snap.obstacles = &idx;
    snap.position = start;
    snap.state_derivatives = {Vec::Zero(d)};
    snap.time = 0.0;

    // Other robots well away from the ego start.
    for (int i = 0; i < 2; ++i) {
      const Vec p = randomVec(rng, d, -4, 4);
      if ((p - start).norm() > 0.6) {
        snap.robot_shapes.push_back(placeShape(task.shape, p));
      }
    }

    PlanDebug dbg;
    dbg.keep_qp = true;
    const auto traj = planIteration(snap, task, params, &dbg);
    if (!dbg.qp) continue;
    ++checked;
    CHECK(!dbg.svm_infeasible);
    const PiecewiseTrajectory encoded = discretePlanSpline(dbg.plan, params.bezier_degree);
    const Vec x = splineVariables(encoded, *dbg.qp);
    CHECK(kinematicViolation(*dbg.qp, x) <= 1e-9);
    if (traj) {
      // The returned trajectory obeys every constraint at the QP tolerance.
      const Vec sol = splineVariables(*traj, *dbg.qp);
      CHECK((dbg.qp->prob.A * sol - dbg.qp->prob.b).maxCoeff() <= 1e-6);
    }
  }
}

TEST_CASE("two facing robots compute mirrored cells and stay separated") {
  const TaskInputs task_a = makeTask(v2(-0.5, 0), v2(3, 0), 10.0, 1);
  const TaskInputs task_b = makeTask(v2(0.5, 0), v2(-3, 0), 10.0, 1);
  const RlssParams params = deskParams();
  ObstacleIndex empty_idx;

  Snapshot snap_a;
  snap_a.obstacles = &empty_idx;
  snap_a.position = v2(-0.5, 0);
  snap_a.state_derivatives = {v2(0, 0)};
  snap_a.robot_shapes = {placeShape(task_b.shape, v2(0.5, 0))};

  Snapshot snap_b;
  snap_b.obstacles = &empty_idx;
  snap_b.position = v2(0.5, 0);
  snap_b.state_derivatives = {v2(0, 0)};
  snap_b.robot_shapes = {placeShape(task_a.shape, v2(-0.5, 0))};

  PlanDebug dbg_a, dbg_b;
  dbg_a.keep_qp = true;
  dbg_b.keep_qp = true;
  const auto traj_a = planIteration(snap_a, task_a, params, &dbg_a);
  const auto traj_b = planIteration(snap_b, task_b, params, &dbg_b);
  REQUIRE(traj_a.has_value());
  REQUIRE(traj_b.has_value());

  // The pairwise SVM hyperplanes mirror one another.
  REQUIRE(!dbg_a.qp->preferred_planes.empty());
  REQUIRE(!dbg_b.qp->preferred_planes.empty());

  // Executed first pieces never collide (sampled at millisecond resolution).
  const double dt = params.replan_period;
  for (int s = 0; s <= 100; ++s) {
    const double t = dt * s / 100.0;
    const ConvexShape sa = placeShape(task_a.shape, traj_a->eval(t));
    const ConvexShape sb = placeShape(task_b.shape, traj_b->eval(t));
    CHECK(minDist(sa, sb) > 0.0);
  }
}

TEST_CASE("temporalRescale enforces derivative limits") {
  SUBCASE("exact halving of an overspeed linear piece") {
    PiecewiseTrajectory traj;
    Mat ctrl(2, 2);
    ctrl << 0.0, 0.0, 4.0, 0.0;
    traj.pieces.emplace_back(1.0, ctrl);
    const PiecewiseTrajectory scaled = temporalRescale(traj, {2.0}, 2.0);
    CHECK(maxDerivativeBound(scaled, 1) == doctest::Approx(2.0));
    CHECK(scaled.pieces[0].duration == doctest::Approx(2.0));
  }
  SUBCASE("conforming trajectories are returned unchanged") {
    PiecewiseTrajectory traj;
    Mat ctrl(2, 2);
    ctrl << 0.0, 0.0, 0.5, 0.0;
    traj.pieces.emplace_back(1.0, ctrl);
    const PiecewiseTrajectory scaled = temporalRescale(traj, {2.0, 3.0}, 1.5);
    CHECK(scaled.pieces[0].duration == doctest::Approx(1.0));
  }
  SUBCASE("acceleration-only violations are repaired and the path is kept") {
    Rng rng(151);
    for (int trial = 0; trial < 10; ++trial) {
      PiecewiseTrajectory traj = testing::randomTrajectory(rng, 3, 6, 2);
      const double gamma1 = maxDerivativeBound(traj, 1) + 1.0;  // satisfied
      const double gamma2 = maxDerivativeBound(traj, 2) / 4.0;  // violated
      if (gamma2 <= 0.0) continue;
      const PiecewiseTrajectory scaled = temporalRescale(traj, {gamma1, gamma2}, 1.5);
      const double T = scaled.totalDuration();
      double max_acc = 0.0;
      for (int s = 0; s <= 100; ++s) {
        max_acc = std::max(max_acc, scaled.eval(T * s / 100.0, 2).norm());
      }
      CHECK(max_acc <= gamma2 * (1.0 + 1e-6));
      const double T0 = traj.totalDuration();
      for (int s = 0; s <= 100; ++s) {
        const double u = s / 100.0;
        CHECK((traj.eval(u * T0) - scaled.eval(u * T)).norm() <= 1e-9);
      }
    }
  }
}

TEST_CASE("planIteration handles a stationary robot at its goal") {
  const Vec start = v2(1, 1);
  const TaskInputs task = makeTask(start, start, 10.0, 1);
  ObstacleIndex empty_idx;
  Snapshot snap;
  snap.obstacles = &empty_idx;
  snap.position = start;
  snap.state_derivatives = {v2(0, 0)};
  const auto traj = planIteration(snap, task, deskParams(), nullptr);
  REQUIRE(traj.has_value());
  CHECK(maxDerivativeBound(*traj, 1) <= 2.0 + 1e-9);
  const double T = traj->totalDuration();
  for (int s = 0; s <= 20; ++s) {
    CHECK((traj->eval(T * s / 20.0) - start).norm() <= 0.1);
  }
}
