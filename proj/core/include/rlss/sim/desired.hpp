#pragma once

#include "rlss/planner/params.hpp"
#include "rlss/sim/scenario.hpp"

namespace rlss::sim {

/// Straight start-to-goal segment with duration length / vmax (or a short
/// stationary piece when start == goal).
PiecewiseTrajectory straightLineDesired(const Vec& start, const Vec& goal, double vmax);

/// Desired trajectory for one robot. With an empty prior map this is the
/// straight segment; with a full prior it is the single-agent discrete
/// search path over the obstacle map (no other robots), with durations
/// proportional to segment lengths at maximum velocity.
PiecewiseTrajectory computeDesiredTrajectory(const RobotSpec& robot, const Vec& start,
                                             PriorMap prior, const ObstacleIndex& obstacles,
                                             const Workspace& ws, const RlssParams& params);

}  // namespace rlss::sim
