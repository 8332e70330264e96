#pragma once

#include "rlss/planner/params.hpp"

#include <vector>

namespace rlss {

/// Discrete search actions. ROTATE changes the current direction, FORWARD
/// moves one step along it, REACHGOAL connects the current position to the
/// (generally off-grid) goal.
struct SearchAction {
  enum class Type { Rotate, Forward, ReachGoal };
  Type type = Type::Rotate;
  Eigen::VectorXi direction;  // used by Rotate
};

/// Best-effort A* on a grid of step size sigma anchored at the robot's
/// current position. If the goal is unreachable (or the node budget runs
/// out) the least-cost path to the expanded state with the lowest heuristic
/// is returned instead.
std::vector<SearchAction> bestEffortAstar(const Snapshot& snap, const TaskInputs& task,
                                          const RlssParams& params, const Vec& goal);

/// Collapses the action sequence into straight-segment endpoints. Each
/// ROTATE(FORWARD)+ run and each REACHGOAL becomes one segment; the action
/// list must match ((ROTATE)(FORWARD)+)*(REACHGOAL)? or std::logic_error is
/// thrown. Returns start plus one endpoint per segment (no prepend).
std::vector<Vec> extractSegments(const std::vector<SearchAction>& actions, const Vec& start,
                                 double sigma, const Vec& goal);

/// Duplicates the first endpoint so the plan begins with a zero-length
/// segment; this keeps the generated optimization problem kinematically
/// feasible.
void prependStart(std::vector<Vec>& endpoints);

/// Duration assignment: the first segment gets the safety duration, the rest
/// share max(goal_time - now, total length / vmax) proportionally to length.
std::vector<double> assignDurations(const std::vector<Vec>& endpoints, double goal_time,
                                    double now, double vmax, double safety_duration);

}  // namespace rlss
