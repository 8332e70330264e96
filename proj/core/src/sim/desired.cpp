#include "rlss/sim/desired.hpp"

#include "rlss/planner/discrete_search.hpp"

#include <algorithm>

namespace rlss::sim {

namespace {

PiecewiseTrajectory linearSpline(const std::vector<Vec>& endpoints, double vmax,
                                 double min_duration) {
  PiecewiseTrajectory traj;
  for (size_t i = 1; i < endpoints.size(); ++i) {
    const double len = (endpoints[i] - endpoints[i - 1]).norm();
    if (len <= 1e-12 && endpoints.size() > 2) continue;
    Mat ctrl(2, endpoints[i].size());
    ctrl.row(0) = endpoints[i - 1].transpose();
    ctrl.row(1) = endpoints[i].transpose();
    traj.pieces.emplace_back(std::max(len / vmax, min_duration), std::move(ctrl));
  }
  if (traj.pieces.empty()) {
    Mat ctrl(2, endpoints.front().size());
    ctrl.row(0) = endpoints.front().transpose();
    ctrl.row(1) = endpoints.front().transpose();
    traj.pieces.emplace_back(min_duration, std::move(ctrl));
  }
  return traj;
}

}  // namespace

PiecewiseTrajectory straightLineDesired(const Vec& start, const Vec& goal, double vmax) {
  return linearSpline({start, goal}, vmax, 1e-3);
}

PiecewiseTrajectory computeDesiredTrajectory(const RobotSpec& robot, const Vec& start,
                                             PriorMap prior, const ObstacleIndex& obstacles,
                                             const Workspace& ws, const RlssParams& params) {
  const double vmax = robot.derivative_limits.front();
  if (prior == PriorMap::Empty) {
    return straightLineDesired(start, robot.goal, vmax);
  }

  TaskInputs task;
  task.shape = robot.base;
  task.workspace = ws;
  task.continuity = robot.continuity;
  task.derivative_limits = robot.derivative_limits;
  task.desired = straightLineDesired(start, robot.goal, vmax);

  Snapshot snap;
  snap.obstacles = &obstacles;
  snap.position = start;
  snap.time = 0.0;

  const std::vector<SearchAction> actions = bestEffortAstar(snap, task, params, robot.goal);
  const std::vector<Vec> endpoints =
      extractSegments(actions, start, params.step_size, robot.goal);
  return linearSpline(endpoints, vmax, 1e-3);
}

}  // namespace rlss::sim
