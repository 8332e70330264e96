#include "rlss/sim/simulator.hpp"

#include "rlss/geometry/distance.hpp"
#include "rlss/sim/desired.hpp"
#include "rlss/sim/rng.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstring>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace rlss::sim {

namespace {

using Clock = std::chrono::steady_clock;

uint64_t hashDoubles(uint64_t h, const double* data, size_t count) {
  for (size_t i = 0; i < count; ++i) {
    uint64_t bits;
    std::memcpy(&bits, &data[i], sizeof(bits));
    h ^= bits;
    h *= 1099511628211ull;
  }
  return h;
}

struct RlssRobotState {
  TaskInputs task;
  PiecewiseTrajectory committed;
  double offset = 0.0;  // executed time into the committed trajectory
  bool has_plan = false;
  Vec start;
};

Vec clampedPosition(const RlssRobotState& r, double local_t) {
  if (!r.has_plan) return r.start;
  const double total = r.committed.totalDuration();
  return r.committed.eval(std::clamp(local_t, 0.0, total));
}

Vec clampedDerivative(const RlssRobotState& r, double local_t, int order) {
  const int d = static_cast<int>(r.start.size());
  if (!r.has_plan) return Vec::Zero(d);
  const double total = r.committed.totalDuration();
  if (local_t >= total) return Vec::Zero(d);  // holding at the endpoint
  return r.committed.eval(std::max(local_t, 0.0), order);
}

struct EbvcRobotState {
  ebvc::LtiSystem sys;
  ebvc::EbvcParams params;
  Vec x;       // current state
  Vec x_next;  // state after the pending step
  double radius = 0.0;
  PiecewiseTrajectory desired;
};

double boundingRadius(const ConvexShape& shape) {
  double r = 0.0;
  for (const Vec& v : shape.vertices) r = std::max(r, v.norm());
  return r;
}

Vec jitteredStart(const RobotSpec& spec, double jitter, Rng& rng, const Workspace& ws,
                  const ObstacleIndex& obstacles, const std::vector<ConvexShape>& placed) {
  if (jitter <= 0.0) return spec.start;
  const int d = static_cast<int>(spec.start.size());
  for (int attempt = 0; attempt < 100; ++attempt) {
    Vec delta(d);
    for (int k = 0; k < d; ++k) delta(k) = rng.uniform(-jitter, jitter);
    if (delta.norm() > jitter) continue;
    const Vec candidate = spec.start + delta;
    const ConvexShape shape = placeShape(spec.base, candidate);
    if (!ws.containsShape(shape)) continue;
    if (obstacles.intersectsAny(shape)) continue;
    bool overlaps = false;
    for (const ConvexShape& other : placed) {
      if (intersects(shape, other)) {
        overlaps = true;
        break;
      }
    }
    if (!overlaps) return candidate;
  }
  return spec.start;
}

}  // namespace

const char* algoName(Algo a) { return a == Algo::Rlss ? "rlss" : "ebvc"; }

RobotStatus classifyRobot(const std::vector<std::pair<double, Vec>>& history, const Vec& goal) {
  if (history.empty()) return RobotStatus::Active;
  const auto& [now, pos] = history.back();
  if ((pos - goal).norm() <= kGoalTolerance) return RobotStatus::GoalReached;

  bool window_covered = false;
  double max_disp = 0.0;
  for (auto it = history.rbegin(); it != history.rend(); ++it) {
    if (it->first < now - kDeadlockWindow - 1e-9) break;
    max_disp = std::max(max_disp, (it->second - pos).norm());
    if (it->first <= now - kDeadlockWindow + 1e-9) window_covered = true;
  }
  if (window_covered && max_disp <= kDeadlockDisplacement) return RobotStatus::Deadlocked;
  return RobotStatus::Active;
}

SimResult runSimulation(const Scenario& scenario, Algo algo, const RunOptions& options) {
  const auto wall_start = Clock::now();
  const int N = static_cast<int>(scenario.robots.size());
  const int d = scenario.dimension;
  const double dt = scenario.replan_period;
  const uint64_t seed = options.seed_override.value_or(scenario.seed);

  // Environment.
  std::vector<AlignedBox> boxes;
  double resolution = scenario.environment.resolution;
  switch (scenario.environment.kind) {
    case EnvironmentSpec::Kind::Empty:
      break;
    case EnvironmentSpec::Kind::Inline:
      boxes = scenario.environment.boxes;
      break;
    case EnvironmentSpec::Kind::File: {
      auto [file_boxes, file_res] = loadEnvironmentFile(scenario.environment.file);
      boxes = std::move(file_boxes);
      resolution = file_res;
      break;
    }
    case EnvironmentSpec::Kind::Forest: {
      Rng rng(seed);
      boxes = generateForest(scenario.environment.forest, rng.fork(0x666f7265ull).next());
      resolution = scenario.environment.forest.resolution;
      break;
    }
  }
  const ObstacleIndex obstacles(std::move(boxes), resolution > 0.0 ? resolution : 0.5);
  const Workspace ws = Workspace::fromBox(scenario.workspace_box);

  RlssParams params = scenario.rlss;
  params.replan_period = dt;
  if (options.no_prepend) params.prepend = false;
  if (options.no_pref_dist) params.pref_weight = 0.0;

  // Starts (optionally jittered per seed).
  std::vector<Vec> starts(N);
  {
    Rng rng = Rng(seed).fork(0x6a697474ull);
    std::vector<ConvexShape> placed;
    for (int i = 0; i < N; ++i) {
      Rng robot_rng = rng.fork(static_cast<uint64_t>(i) + 1);
      starts[i] = jitteredStart(scenario.robots[i], scenario.start_jitter, robot_rng, ws,
                                obstacles, placed);
      placed.push_back(placeShape(scenario.robots[i].base, starts[i]));
    }
  }

  SimResult result;
  result.metrics.scenario = scenario.name;
  result.metrics.algorithm = algoName(algo);
  result.metrics.seed = seed;
  result.metrics.robots.resize(N);
  for (int i = 0; i < N; ++i) result.metrics.robots[i].id = i;

  // Per-robot runtime state.
  std::vector<RlssRobotState> rlss_robots;
  std::vector<EbvcRobotState> ebvc_robots;
  if (algo == Algo::Rlss) {
    rlss_robots.resize(N);
    for (int i = 0; i < N; ++i) {
      RlssRobotState& r = rlss_robots[i];
      r.task.shape = scenario.robots[i].base;
      r.task.workspace = ws;
      r.task.continuity = scenario.robots[i].continuity;
      r.task.derivative_limits = scenario.robots[i].derivative_limits;
      r.task.desired = computeDesiredTrajectory(scenario.robots[i], starts[i],
                                                scenario.prior_map, obstacles, ws, params);
      r.start = starts[i];
      params.validate(r.task);
    }
  } else {
    ebvc_robots.resize(N);
    for (int i = 0; i < N; ++i) {
      EbvcRobotState& r = ebvc_robots[i];
      const RobotSpec& spec = scenario.robots[i];
      const int order = spec.continuity + 1;
      r.sys = ebvc::LtiSystem::integratorChain(order, d, dt);
      r.params = scenario.ebvc;
      r.params.dt = dt;
      r.params.radius = boundingRadius(spec.base);
      const int nx = r.sys.stateDim();
      r.params.x_min = Vec::Constant(nx, -std::numeric_limits<double>::infinity());
      r.params.x_max = Vec::Constant(nx, std::numeric_limits<double>::infinity());
      // Componentwise bounds gamma^k / sqrt(d) keep the derivative norms
      // within the task limits; unspecified orders stay unbounded (the input
      // cost still keeps the QP bounded).
      const double root_d = std::sqrt(static_cast<double>(d));
      const auto limitFor = [&](int k) {
        return k <= static_cast<int>(spec.derivative_limits.size())
                   ? spec.derivative_limits[k - 1] / root_d
                   : std::numeric_limits<double>::infinity();
      };
      for (int k = 1; k < order; ++k) {
        for (int c = 0; c < d; ++c) {
          r.params.x_min(k * d + c) = -limitFor(k);
          r.params.x_max(k * d + c) = limitFor(k);
        }
      }
      r.params.u_min = Vec::Constant(d, -limitFor(order));
      r.params.u_max = Vec::Constant(d, limitFor(order));
      r.x = Vec::Zero(nx);
      r.x.head(d) = starts[i];
      r.x_next = r.x;
      r.desired = computeDesiredTrajectory(spec, starts[i], scenario.prior_map, obstacles, ws,
                                           params);
    }
  }

  // Obstacle bounding spheres for the eBVC tessellation.
  std::vector<std::pair<Vec, double>> obstacle_spheres;
  if (algo == Algo::Ebvc) {
    for (const AlignedBox& b : obstacles.boxes()) {
      obstacle_spheres.emplace_back(b.center(), 0.5 * (b.max - b.min).norm());
    }
  }

  std::vector<std::vector<std::pair<double, Vec>>> history(N);
  std::vector<Vec> positions(N);
  for (int i = 0; i < N; ++i) {
    positions[i] =
        algo == Algo::Rlss ? starts[i] : Vec(ebvc_robots[i].sys.C * ebvc_robots[i].x);
    history[i].push_back({0.0, positions[i]});
  }

  const int audit_samples = std::max(1, static_cast<int>(std::ceil(dt / kAuditResolution)));
  std::string terminated_by = "sim_time_cap";
  int iter = 0;

  for (;; ++iter) {
    const double now = iter * dt;
    if (now + dt > scenario.max_sim_time + 1e-9) {
      terminated_by = "sim_time_cap";
      break;
    }
    if (std::chrono::duration<double>(Clock::now() - wall_start).count() >
        options.wall_budget_seconds) {
      terminated_by = "wall_budget";
      result.metrics.budget_exceeded = true;
      break;
    }

    // Frozen world snapshot for this iteration.
    std::vector<ConvexShape> shapes(N);
    for (int i = 0; i < N; ++i) {
      shapes[i] = placeShape(scenario.robots[i].base, positions[i]);
    }
    if (options.collect_logs) {
      uint64_t h = 1469598103934665603ull;
      h = hashDoubles(h, &now, 1);
      for (int i = 0; i < N; ++i) {
        h = hashDoubles(h, positions[i].data(), positions[i].size());
      }
      result.metrics.snapshot_hashes.push_back(h);
      for (int i = 0; i < N; ++i) {
        result.rows.push_back({i, iter, now, positions[i]});
      }
    }

    // Plan all robots against the same snapshot.
    const auto iter_start = Clock::now();
    for (int i = 0; i < N; ++i) {
      RobotMetrics& rm = result.metrics.robots[i];
      if (algo == Algo::Rlss) {
        RlssRobotState& r = rlss_robots[i];
        Snapshot snap;
        snap.obstacles = &obstacles;
        snap.position = positions[i];
        snap.time = now;
        snap.robot_shapes.reserve(N - 1);
        for (int j = 0; j < N; ++j) {
          if (j != i) snap.robot_shapes.push_back(shapes[j]);
        }
        snap.state_derivatives.clear();
        for (int k = 1; k <= r.task.continuity; ++k) {
          snap.state_derivatives.push_back(clampedDerivative(r, r.offset, k));
        }

        PlanDebug dbg;
        dbg.keep_qp = options.observer_keep_qp;
        auto traj = planIteration(snap, r.task, params, &dbg);
        ++rm.plan_iterations;
        result.timing.goal_selection.add(dbg.goal_selection_ms);
        result.timing.discrete_search.add(dbg.discrete_search_ms);
        result.timing.optimization.add(dbg.optimization_ms);
        result.timing.rescale.add(dbg.rescale_ms);
        if (dbg.svm_infeasible) ++rm.svm_infeasible;
        if (dbg.qp_failed) ++rm.qp_failures;
        if (options.observer) options.observer(iter, i, dbg);

        if (traj) {
          r.committed = std::move(*traj);
          r.offset = 0.0;
          r.has_plan = true;
          if (options.collect_logs) {
            result.splines.push_back({i, iter, true, r.committed});
          }
        }
      } else {
        EbvcRobotState& r = ebvc_robots[i];
        ++rm.plan_iterations;
        std::vector<std::pair<Vec, double>> others;
        for (int j = 0; j < N; ++j) {
          if (j == i) continue;
          const double surface_dist =
              (positions[j] - positions[i]).norm() - r.radius - ebvc_robots[j].radius;
          if (surface_dist <= r.params.check_distance) {
            others.emplace_back(positions[j], ebvc_robots[j].radius);
          }
        }
        for (const auto& [center, radius] : obstacle_spheres) {
          const double surface_dist = (center - positions[i]).norm() - r.radius - radius;
          if (surface_dist <= r.params.check_distance) {
            others.emplace_back(center, radius);
          }
        }
        const HPolytope cell = ebvc::bvcCell(positions[i], r.radius, others);
        const double horizon = r.params.horizon_steps * dt;
        const double T = r.desired.totalDuration();
        const Vec goal = r.desired.eval(std::clamp(now + horizon, 0.0, T));
        const auto step = ebvc::ebvcStep(r.x, goal, cell, r.sys, ws, r.params);
        if (step.status != qp::SolveStatus::Optimal) ++rm.qp_failures;
        r.x_next = r.sys.A * r.x + r.sys.B * step.input;
      }
    }
    result.timing.iteration.add(
        std::chrono::duration<double, std::milli>(Clock::now() - iter_start).count());

    // Advance all robots and audit collisions over (now, now + dt].
    std::vector<Vec> next_positions(N);
    for (int k = 1; k <= audit_samples; ++k) {
      const double tau = dt * k / audit_samples;
      std::vector<Vec> sample(N);
      std::vector<ConvexShape> sample_shapes(N);
      std::vector<AlignedBox> sample_bounds;
      sample_bounds.reserve(N);
      for (int i = 0; i < N; ++i) {
        if (algo == Algo::Rlss) {
          sample[i] = clampedPosition(rlss_robots[i], rlss_robots[i].offset + tau);
        } else {
          const double u = tau / dt;
          sample[i] = ebvc_robots[i].sys.C *
                      ((1.0 - u) * ebvc_robots[i].x + u * ebvc_robots[i].x_next);
        }
        sample_shapes[i] = placeShape(scenario.robots[i].base, sample[i]);
        sample_bounds.push_back(boundsOf(sample_shapes[i]));
      }
      const double slice = dt / audit_samples;
      for (int i = 0; i < N; ++i) {
        for (int j = i + 1; j < N; ++j) {
          if (!sample_bounds[i].intersects(sample_bounds[j])) continue;
          if (intersects(sample_shapes[i], sample_shapes[j])) {
            result.metrics.robots[i].collision_involved = true;
            result.metrics.robots[j].collision_involved = true;
            result.metrics.robots[i].collision_duration += slice;
            result.metrics.robots[j].collision_duration += slice;
          }
        }
        if (obstacles.intersectsAny(sample_shapes[i])) {
          result.metrics.robots[i].collision_involved = true;
          result.metrics.robots[i].collision_duration += slice;
        }
      }
      if (k == audit_samples) next_positions = sample;
    }

    for (int i = 0; i < N; ++i) {
      if (algo == Algo::Rlss) {
        rlss_robots[i].offset += dt;
      } else {
        ebvc_robots[i].x = ebvc_robots[i].x_next;
      }
      positions[i] = next_positions[i];
      history[i].push_back({now + dt, positions[i]});
    }

    // Classification and termination.
    bool all_settled = true;
    for (int i = 0; i < N; ++i) {
      RobotMetrics& rm = result.metrics.robots[i];
      const RobotStatus status = classifyRobot(history[i], scenario.robots[i].goal);
      if (status == RobotStatus::GoalReached) {
        if (!rm.nav_duration) rm.nav_duration = now + dt;
        rm.goal_reached = true;
        rm.deadlocked = false;
      } else {
        rm.goal_reached = false;
        rm.deadlocked = status == RobotStatus::Deadlocked;
        if (status == RobotStatus::Active) all_settled = false;
      }
    }
    result.metrics.iterations = iter + 1;
    result.metrics.sim_time = now + dt;
    if (all_settled) {
      terminated_by = "all_settled";
      ++iter;
      break;
    }
  }

  // Final positions for the log.
  if (options.collect_logs) {
    for (int i = 0; i < N; ++i) {
      result.rows.push_back({i, iter, iter * dt, positions[i]});
    }
  }
  result.metrics.terminated_by = terminated_by;
  result.timing.wall_seconds =
      std::chrono::duration<double>(Clock::now() - wall_start).count();
  return result;
}

std::string trajectoryCsv(const SimResult& result, int dim) {
  std::ostringstream out;
  out << "robot_id,iteration,t,x,y";
  if (dim == 3) out << ",z";
  out << "\n";
  out.precision(17);
  for (const TrajectoryLogRow& row : result.rows) {
    out << row.robot << "," << row.iteration << "," << row.t;
    for (int k = 0; k < dim; ++k) out << "," << row.position(k);
    out << "\n";
  }
  return out.str();
}

std::string splinesToJson(const SimResult& result) {
  nlohmann::json doc = nlohmann::json::array();
  for (const SplineLogEntry& entry : result.splines) {
    nlohmann::json je;
    je["robot"] = entry.robot;
    je["iteration"] = entry.iteration;
    je["replanned"] = entry.replanned;
    je["pieces"] = nlohmann::json::array();
    for (const BezierPiece& piece : entry.trajectory.pieces) {
      nlohmann::json jp;
      jp["degree"] = piece.degree();
      jp["duration"] = piece.duration;
      jp["control_points"] = nlohmann::json::array();
      for (int r = 0; r < piece.ctrl.rows(); ++r) {
        std::vector<double> pt(piece.ctrl.cols());
        for (int c = 0; c < piece.ctrl.cols(); ++c) pt[c] = piece.ctrl(r, c);
        jp["control_points"].push_back(pt);
      }
      je["pieces"].push_back(std::move(jp));
    }
    doc.push_back(std::move(je));
  }
  return doc.dump(2) + "\n";
}

}  // namespace rlss::sim
