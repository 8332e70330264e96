#pragma once

#include "rlss/planner/discrete_search.hpp"
#include "rlss/planner/goal_select.hpp"
#include "rlss/planner/traj_opt.hpp"

#include <optional>

namespace rlss {

/// Uniformly inflates piece durations until every derivative magnitude bound
/// is within the limits (bound for order k scales by factor^-k, so the loop
/// terminates; capped at 100 rounds).
PiecewiseTrajectory temporalRescale(PiecewiseTrajectory traj,
                                    const std::vector<double>& derivative_limits,
                                    double factor);

enum class PlanStage { GoalSelection, DiscreteSearch, TrajectoryOptimization, Rescaling };

/// Per-iteration introspection for metrics and invariant audits. Filled when
/// a pointer is passed to planIteration; the QP is only retained when
/// keep_qp is set beforehand (it is large).
struct PlanDebug {
  GoalSelection goal;
  std::vector<SearchAction> actions;
  DiscretePlan plan;
  bool keep_qp = false;
  std::optional<TrajectoryQp> qp;
  std::optional<PiecewiseTrajectory> pre_rescale;
  int svm_count = 0;
  bool svm_infeasible = false;
  bool qp_failed = false;
  double goal_selection_ms = 0.0;
  double discrete_search_ms = 0.0;
  double optimization_ms = 0.0;
  double rescale_ms = 0.0;
};

/// One full receding-horizon planning iteration: goal selection, best-effort
/// discrete search, trajectory optimization, temporal rescaling. Returns
/// nullopt when optimization fails; the caller keeps executing its previous
/// plan in that case.
std::optional<PiecewiseTrajectory> planIteration(const Snapshot& snap, const TaskInputs& task,
                                                 const RlssParams& params,
                                                 PlanDebug* debug = nullptr);

}  // namespace rlss
