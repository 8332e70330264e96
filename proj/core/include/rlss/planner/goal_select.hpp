#pragma once

#include "rlss/planner/params.hpp"

namespace rlss {

struct GoalSelection {
  Vec goal;
  double timestamp = 0.0;
  bool fallback = false;  // no safe point existed; goal is the current position
};

/// Picks the timestamp on the desired trajectory closest to now + horizon at
/// which the robot, placed on the trajectory, keeps at least the safety
/// distance from obstacles, other robots, and the workspace boundary.
/// Bidirectional linear search; falls back to (current position, now) when
/// no point on the desired trajectory qualifies.
GoalSelection selectGoal(const Snapshot& snap, const TaskInputs& task,
                         const RlssParams& params);

}  // namespace rlss
