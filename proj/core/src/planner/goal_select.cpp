#include "rlss/planner/goal_select.hpp"

#include "rlss/geometry/distance.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace rlss {

namespace {

bool placementSafe(const Snapshot& snap, const TaskInputs& task, double D, double t) {
  const ConvexShape placed = placeShape(task.shape, task.desiredAt(t));
  if (task.workspace.boundaryClearance(placed) < D) return false;
  if (snap.obstacles && snap.obstacles->minDistanceWithin(placed, D) < D) return false;
  for (const ConvexShape& other : snap.robot_shapes) {
    if (minDist(placed, other) < D) return false;
  }
  return true;
}

}  // namespace

GoalSelection selectGoal(const Snapshot& snap, const TaskInputs& task,
                         const RlssParams& params) {
  const double T = task.desired.totalDuration();
  const double target = snap.time + params.horizon;
  const double step = params.goalSearchStep();
  const double anchor = std::clamp(target, 0.0, T);

  // Candidate timestamps ordered by |t - target|, forward preferred on ties.
  std::vector<double> forward, backward;
  for (double t = anchor;; t += step) {
    if (t >= T) {
      forward.push_back(T);
      break;
    }
    forward.push_back(t);
  }
  for (double t = anchor - step;; t -= step) {
    if (t <= 0.0) {
      backward.push_back(0.0);
      break;
    }
    backward.push_back(t);
  }

  size_t fi = 0, bi = 0;
  while (fi < forward.size() || bi < backward.size()) {
    double t;
    if (bi >= backward.size()) {
      t = forward[fi++];
    } else if (fi >= forward.size()) {
      t = backward[bi++];
    } else if (std::abs(forward[fi] - target) <= std::abs(backward[bi] - target)) {
      t = forward[fi++];
    } else {
      t = backward[bi++];
    }
    if (placementSafe(snap, task, params.safety_distance, t)) {
      return {task.desiredAt(t), t, false};
    }
  }
  return {snap.position, snap.time, true};
}

}  // namespace rlss
