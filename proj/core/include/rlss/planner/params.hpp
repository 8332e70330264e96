#pragma once

#include "rlss/curves/piecewise.hpp"
#include "rlss/env/obstacle_index.hpp"
#include "rlss/env/workspace.hpp"
#include "rlss/geometry/types.hpp"

#include <vector>

namespace rlss {

/// Per-robot task description: shape, dynamics limits, desired trajectory.
/// These are fixed for the duration of a navigation task.
struct TaskInputs {
  ConvexShape shape;             // collision shape placed at the origin
  PiecewiseTrajectory desired;   // d(t); clamped to d(T) beyond its duration
  Workspace workspace;
  int continuity = 1;                     // required C^c degree
  std::vector<double> derivative_limits;  // gamma^k for k = 1..K

  /// Desired position at time t, clamped to the trajectory domain.
  Vec desiredAt(double t) const;
};

/// Tuning parameters of the planning pipeline.
struct RlssParams {
  double horizon = 5.0;             // tau
  double safety_distance = 0.2;     // D (goal selection)
  double step_size = 0.5;           // sigma (search grid)
  double safety_duration = 0.11;    // s, duration of the first piece
  double replan_period = 0.1;       // delta t, shared by all robots
  int bezier_degree = 8;            // h
  double obstacle_check = 1.0;      // o~, SVM generation distance
  double robot_check = 2.0;         // r~, SVM generation distance
  double preferred_distance = 0.6;  // p~, soft standoff from constraints
  double pref_weight = 0.3;         // alpha
  std::vector<double> endpoint_weights = {0.0, 150.0, 240.0, 300.0};  // theta_i
  std::vector<double> derivative_weights = {2.0, 2.8};                // lambda_j
  // Desired durations sit at the feasibility boundary whenever the robot
  // lags its reference, so nearly every plan is rescaled; the factor must be
  // gentle or each rescale crushes the velocity carried across iterations.
  double rescale_factor = 1.05;
  double goal_search_step = 0.0;  // 0 selects replan_period
  int search_node_budget = 100000;
  bool prepend = true;       // duplicate the first endpoint (zero-length piece)
  double qp_tolerance = 1e-8;

  double thetaFor(int piece_index_one_based) const;
  double goalSearchStep() const {
    return goal_search_step > 0.0 ? goal_search_step : replan_period;
  }

  /// Enforces the parameter coupling rules; throws std::invalid_argument.
  void validate(const TaskInputs& task) const;
};

/// Frozen world state a single planning iteration runs against. The ego
/// robot's own shape is excluded from robot_shapes.
struct Snapshot {
  std::vector<ConvexShape> robot_shapes;  // other robots, already placed
  const ObstacleIndex* obstacles = nullptr;
  Vec position;
  std::vector<Vec> state_derivatives;  // derivative j at index j-1, j = 1..c
  double time = 0.0;
};

/// Output of the discrete stage: L+1 endpoints defining L segments with
/// assigned durations. With the prepend step the first segment has zero
/// length and duration equal to the safety duration.
struct DiscretePlan {
  std::vector<Vec> endpoints;
  std::vector<double> durations;

  int numSegments() const { return static_cast<int>(durations.size()); }
};

}  // namespace rlss
