#include "rlss/planner/params.hpp"

#include <stdexcept>

namespace rlss {

Vec TaskInputs::desiredAt(double t) const {
  const double T = desired.totalDuration();
  if (t <= 0.0) return desired.eval(0.0);
  if (t >= T) return desired.eval(T);
  return desired.eval(t);
}

double RlssParams::thetaFor(int piece_index_one_based) const {
  if (endpoint_weights.empty()) return 0.0;
  const size_t idx = static_cast<size_t>(piece_index_one_based - 1);
  return idx < endpoint_weights.size() ? endpoint_weights[idx] : endpoint_weights.back();
}

void RlssParams::validate(const TaskInputs& task) const {
  if (!(replan_period > 0.0)) {
    throw std::invalid_argument("RlssParams: replan_period must be > 0");
  }
  if (safety_duration < replan_period) {
    throw std::invalid_argument("RlssParams: safety_duration must be >= replan_period");
  }
  if (bezier_degree < task.continuity + 1) {
    throw std::invalid_argument("RlssParams: bezier_degree must be >= continuity + 1");
  }
  if (!(step_size > 0.0)) {
    throw std::invalid_argument("RlssParams: step_size must be > 0");
  }
  if (!(rescale_factor > 1.0)) {
    throw std::invalid_argument("RlssParams: rescale_factor must be > 1");
  }
  if (task.derivative_limits.empty()) {
    throw std::invalid_argument("TaskInputs: derivative limits must not be empty");
  }
  for (double g : task.derivative_limits) {
    if (!(g > 0.0)) throw std::invalid_argument("TaskInputs: derivative limits must be > 0");
  }
  const double vmax = task.derivative_limits.front();
  if (robot_check < 2.0 * vmax * safety_duration) {
    throw std::invalid_argument(
        "RlssParams: robot_check must be >= 2 * max velocity * safety_duration");
  }
  if (obstacle_check < vmax * replan_period) {
    throw std::invalid_argument(
        "RlssParams: obstacle_check must be >= max velocity * replan_period");
  }
}

}  // namespace rlss
