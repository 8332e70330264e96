#pragma once

#include "rlss/geometry/separation.hpp"
#include "rlss/planner/params.hpp"
#include "rlss/qp/problem.hpp"
#include "rlss/qp/solver.hpp"

#include <optional>
#include <vector>

namespace rlss {

/// Assembled trajectory QP plus per-row provenance, kept around so tests and
/// invariant audits can evaluate individual constraint families.
struct TrajectoryQp {
  enum class RowKind { Workspace, RobotSvm, ObstacleSvm };
  struct IneqRow {
    RowKind kind;
    int piece;  // 0-based
  };
  struct EqRow {
    int derivative;
    int junction;  // -1 for the initial-state rows, else 0-based junction
  };

  qp::QuadraticProgram prob;
  std::vector<IneqRow> ineq_rows;
  std::vector<EqRow> eq_rows;
  std::vector<std::vector<Hyperplane>> piece_constraints;  // buffered planes per piece
  std::vector<Hyperplane> preferred_planes;                // shifted first-piece planes
  int svm_count = 0;
  int num_pieces = 0;
  int degree = 0;
  int dim = 0;

  int varIndex(int piece, int point, int coord) const {
    return ((piece * (degree + 1)) + point) * dim + coord;
  }
};

enum class TrajOptStatus {
  Success,
  SvmInfeasible,  // a separating hyperplane did not exist (inputs intersect)
  QpFailure,
};

struct TrajOptResult {
  TrajOptStatus status = TrajOptStatus::QpFailure;
  std::optional<PiecewiseTrajectory> trajectory;
  TrajectoryQp qp;
};

/// Builds the QP over the control points of an L-piece Bezier spline:
/// buffered workspace constraints on every control point, buffered robot
/// SVM constraints on the first piece, buffered obstacle SVM constraints per
/// piece against obstacles near the swept segment hulls, continuity
/// constraints up to the task's degree, and the energy / endpoint-deviation /
/// preferred-distance cost terms.
std::optional<TrajectoryQp> buildTrajectoryQp(const DiscretePlan& plan, const Snapshot& snap,
                                              const TaskInputs& task, const RlssParams& params);

/// Builds and solves the QP; returns the spline on success.
TrajOptResult optimizeTrajectory(const DiscretePlan& plan, const Snapshot& snap,
                                 const TaskInputs& task, const RlssParams& params);

/// The degree-h spline that traces the discrete plan: for each segment, the
/// first half of the control points sit on the start endpoint and the rest on
/// the end endpoint. Used to audit kinematic feasibility of the QP.
PiecewiseTrajectory discretePlanSpline(const DiscretePlan& plan, int degree);

}  // namespace rlss
