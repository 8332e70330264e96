#include "rlss/planner/planner.hpp"

#include <chrono>

namespace rlss {

namespace {

class StageTimer {
 public:
  explicit StageTimer(double* sink) : sink_(sink), start_(clock::now()) {}
  ~StageTimer() {
    if (sink_) {
      *sink_ = std::chrono::duration<double, std::milli>(clock::now() - start_).count();
    }
  }

 private:
  using clock = std::chrono::steady_clock;
  double* sink_;
  clock::time_point start_;
};

}  // namespace

PiecewiseTrajectory temporalRescale(PiecewiseTrajectory traj,
                                    const std::vector<double>& derivative_limits,
                                    double factor) {
  for (int round = 0; round < 100; ++round) {
    bool ok = true;
    for (size_t k = 1; k <= derivative_limits.size(); ++k) {
      if (maxDerivativeBound(traj, static_cast<int>(k)) > derivative_limits[k - 1]) {
        ok = false;
        break;
      }
    }
    if (ok) break;
    traj = rescaleDurations(std::move(traj), factor);
  }
  return traj;
}

std::optional<PiecewiseTrajectory> planIteration(const Snapshot& snap, const TaskInputs& task,
                                                 const RlssParams& params, PlanDebug* debug) {
  GoalSelection goal;
  {
    StageTimer timer(debug ? &debug->goal_selection_ms : nullptr);
    goal = selectGoal(snap, task, params);
  }
  if (debug) debug->goal = goal;

  DiscretePlan plan;
  {
    StageTimer timer(debug ? &debug->discrete_search_ms : nullptr);
    std::vector<SearchAction> actions = bestEffortAstar(snap, task, params, goal.goal);
    std::vector<Vec> endpoints =
        extractSegments(actions, snap.position, params.step_size, goal.goal);
    if (params.prepend) {
      prependStart(endpoints);
    } else if (endpoints.size() < 2) {
      // Degenerate stay-in-place plan; keep a single zero-length segment so
      // the pipeline stays total even with the prepend step ablated.
      endpoints.push_back(endpoints.front());
    }
    plan.endpoints = std::move(endpoints);
    plan.durations =
        assignDurations(plan.endpoints, goal.timestamp, snap.time,
                        task.derivative_limits.front(), params.safety_duration);
    if (debug) {
      debug->actions = std::move(actions);
      debug->plan = plan;
    }
  }

  TrajOptResult opt;
  {
    StageTimer timer(debug ? &debug->optimization_ms : nullptr);
    opt = optimizeTrajectory(plan, snap, task, params);
  }
  if (debug) {
    debug->svm_count = opt.qp.svm_count;
    debug->svm_infeasible = opt.status == TrajOptStatus::SvmInfeasible;
    debug->qp_failed = opt.status == TrajOptStatus::QpFailure;
    if (debug->keep_qp && opt.status != TrajOptStatus::SvmInfeasible) {
      debug->qp = opt.qp;
    }
    if (opt.trajectory) debug->pre_rescale = opt.trajectory;
  }
  if (opt.status != TrajOptStatus::Success) return std::nullopt;

  PiecewiseTrajectory final_traj;
  {
    StageTimer timer(debug ? &debug->rescale_ms : nullptr);
    final_traj =
        temporalRescale(std::move(*opt.trajectory), task.derivative_limits, params.rescale_factor);
  }
  return final_traj;
}

}  // namespace rlss
