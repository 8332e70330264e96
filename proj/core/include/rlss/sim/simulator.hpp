#pragma once

#include "rlss/planner/planner.hpp"
#include "rlss/sim/metrics.hpp"
#include "rlss/sim/scenario.hpp"

#include <functional>
#include <optional>
#include <string>

namespace rlss::sim {

enum class Algo { Rlss, Ebvc };

constexpr double kGoalTolerance = 0.25;       // meters
constexpr double kDeadlockWindow = 1.0;       // seconds
constexpr double kDeadlockDisplacement = 0.01;  // meters
constexpr double kAuditResolution = 1e-3;     // collision sampling (seconds)

struct RunOptions {
  std::optional<uint64_t> seed_override;
  bool no_prepend = false;    // ablation: skip the zero-length first segment
  bool no_pref_dist = false;  // ablation: drop the preferred-distance cost
  double wall_budget_seconds = 600.0;
  bool collect_logs = true;
  /// Called after each robot's planning call (RLSS only). The debug object
  /// carries the assembled QP when keep_qp was requested.
  std::function<void(int iteration, int robot, const PlanDebug&)> observer;
  bool observer_keep_qp = false;
};

struct TrajectoryLogRow {
  int robot = 0;
  int iteration = 0;
  double t = 0.0;
  Vec position;
};

struct SplineLogEntry {
  int robot = 0;
  int iteration = 0;
  bool replanned = false;  // false: previous plan kept after a failure
  PiecewiseTrajectory trajectory;
};

struct SimResult {
  SimMetrics metrics;
  TimingStats timing;
  std::vector<TrajectoryLogRow> rows;
  std::vector<SplineLogEntry> splines;
};

/// Barrier-synchronized simulation: freeze a snapshot, let every robot plan
/// against it, advance all robots by the replanning period, audit collisions
/// at millisecond resolution, classify robots, repeat until every robot is
/// at its goal or deadlocked (or a time cap is hit).
SimResult runSimulation(const Scenario& scenario, Algo algo, const RunOptions& options = {});

/// Robot status given its recent position history (newest last, sampled at
/// the replanning period).
enum class RobotStatus { Active, GoalReached, Deadlocked };
RobotStatus classifyRobot(const std::vector<std::pair<double, Vec>>& history, const Vec& goal);

std::string trajectoryCsv(const SimResult& result, int dim);
std::string splinesToJson(const SimResult& result);

const char* algoName(Algo a);

}  // namespace rlss::sim
