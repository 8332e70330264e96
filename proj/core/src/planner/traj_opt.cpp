#include "rlss/planner/traj_opt.hpp"

#include "rlss/curves/energy.hpp"
#include "rlss/geometry/distance.hpp"

#include <stdexcept>

namespace rlss {

namespace {

struct HalfspaceConstraint {
  int piece;
  TrajectoryQp::RowKind kind;
  Hyperplane plane;
};

}  // namespace

std::optional<TrajectoryQp> buildTrajectoryQp(const DiscretePlan& plan, const Snapshot& snap,
                                              const TaskInputs& task,
                                              const RlssParams& params) {
  const int L = plan.numSegments();
  const int h = params.bezier_degree;
  const int d = static_cast<int>(snap.position.size());
  if (L < 1 || static_cast<int>(plan.endpoints.size()) != L + 1) {
    throw std::invalid_argument("buildTrajectoryQp: malformed discrete plan");
  }

  TrajectoryQp tqp;
  tqp.num_pieces = L;
  tqp.degree = h;
  tqp.dim = d;
  const int n = L * (h + 1) * d;
  tqp.prob = qp::QuadraticProgram::zero(n);
  tqp.piece_constraints.resize(L);

  std::vector<HalfspaceConstraint> halfspaces;

  // Workspace constraints, buffered by the robot shape, on every piece.
  for (const Hyperplane& face : task.workspace.polytope.halfspaces) {
    const Hyperplane buffered = bufferHyperplane(face, task.shape);
    for (int i = 0; i < L; ++i) {
      halfspaces.push_back({i, TrajectoryQp::RowKind::Workspace, buffered});
    }
  }

  // Robot-robot constraints: buffered SVM cell, first piece only (it is the
  // only piece executed before the next planning iteration).
  const ConvexShape ego = placeShape(task.shape, snap.position);
  for (const ConvexShape& other : snap.robot_shapes) {
    if (minDist(other, ego) > params.robot_check) continue;
    ++tqp.svm_count;
    const auto svm = hardMarginSvm(ego, other);
    if (!svm) return std::nullopt;
    const Hyperplane buffered = bufferHyperplane(*svm, task.shape);
    halfspaces.push_back({0, TrajectoryQp::RowKind::RobotSvm, buffered});
    tqp.preferred_planes.push_back(shiftHyperplane(buffered, params.preferred_distance));
  }

  // Robot-obstacle constraints per piece, against obstacles near the swept
  // segment hull.
  for (int i = 0; i < L; ++i) {
    const ConvexShape sweep = sweptHull(task.shape, plan.endpoints[i], plan.endpoints[i + 1]);
    const std::vector<AlignedBox> nearby =
        snap.obstacles ? snap.obstacles->obstaclesNear(sweep, params.obstacle_check)
                       : std::vector<AlignedBox>();
    for (const AlignedBox& box : nearby) {
      ++tqp.svm_count;
      const auto svm = hardMarginSvm(sweep, box.corners());
      if (!svm) return std::nullopt;
      const Hyperplane buffered = bufferHyperplane(*svm, task.shape);
      halfspaces.push_back({i, TrajectoryQp::RowKind::ObstacleSvm, buffered});
      if (i == 0) {
        tqp.preferred_planes.push_back(shiftHyperplane(buffered, params.preferred_distance));
      }
    }
  }

  // One inequality row per (halfspace, control point): n·P + a <= 0.
  const int ineq_rows = static_cast<int>(halfspaces.size()) * (h + 1);
  tqp.prob.A = Mat::Zero(ineq_rows, n);
  tqp.prob.b = Vec::Zero(ineq_rows);
  int irow = 0;
  for (const HalfspaceConstraint& hc : halfspaces) {
    tqp.piece_constraints[hc.piece].push_back(hc.plane);
    for (int p = 0; p <= h; ++p) {
      for (int k = 0; k < d; ++k) {
        tqp.prob.A(irow, tqp.varIndex(hc.piece, p, k)) = hc.plane.normal(k);
      }
      tqp.prob.b(irow) = -hc.plane.offset;
      tqp.ineq_rows.push_back({hc.kind, hc.piece});
      ++irow;
    }
  }

  // Continuity constraints: derivatives 0..c at t = 0 match the current
  // state; derivatives 0..c match across piece junctions.
  const int c = task.continuity;
  const int eq_rows = (c + 1) * d * L;  // initial block plus L-1 junctions
  tqp.prob.E = Mat::Zero(eq_rows, n);
  tqp.prob.f = Vec::Zero(eq_rows);
  int row = 0;
  for (int j = 0; j <= c; ++j) {
    const Eigen::RowVectorXd coeffs =
        bezierEndpointDerivativeRow(h, plan.durations[0], j, false);
    const Vec value = j == 0 ? snap.position
                             : (j - 1 < static_cast<int>(snap.state_derivatives.size())
                                    ? snap.state_derivatives[j - 1]
                                    : Vec::Zero(d));
    for (int k = 0; k < d; ++k) {
      for (int p = 0; p <= h; ++p) {
        tqp.prob.E(row, tqp.varIndex(0, p, k)) = coeffs(p);
      }
      tqp.prob.f(row) = value(k);
      tqp.eq_rows.push_back({j, -1});
      ++row;
    }
  }
  for (int i = 0; i + 1 < L; ++i) {
    for (int j = 0; j <= c; ++j) {
      const Eigen::RowVectorXd end_row =
          bezierEndpointDerivativeRow(h, plan.durations[i], j, true);
      const Eigen::RowVectorXd start_row =
          bezierEndpointDerivativeRow(h, plan.durations[i + 1], j, false);
      for (int k = 0; k < d; ++k) {
        for (int p = 0; p <= h; ++p) {
          tqp.prob.E(row, tqp.varIndex(i, p, k)) = end_row(p);
          tqp.prob.E(row, tqp.varIndex(i + 1, p, k)) = -start_row(p);
        }
        tqp.prob.f(row) = 0.0;
        tqp.eq_rows.push_back({j, i});
        ++row;
      }
    }
  }

  // Cost: integrated squared derivatives plus endpoint deviation plus the
  // preferred-distance standoff at the replanning period.
  tqp.prob.Q = energyHessian(std::vector<int>(L, h), plan.durations,
                             params.derivative_weights, d);
  for (int i = 0; i < L; ++i) {
    const double theta = params.thetaFor(i + 1);
    if (theta == 0.0) continue;
    for (int k = 0; k < d; ++k) {
      const int idx = tqp.varIndex(i, h, k);
      tqp.prob.Q(idx, idx) += theta;
      tqp.prob.q(idx) += -2.0 * theta * plan.endpoints[i + 1](k);
    }
  }
  if (params.pref_weight > 0.0 && !tqp.preferred_planes.empty()) {
    const Vec weights = bernsteinBasis(h, params.replan_period / plan.durations[0]);
    for (const Hyperplane& plane : tqp.preferred_planes) {
      // alpha * (n·f(dt) + a)^2 with f(dt) a fixed combination of the first
      // piece's control points.
      Vec grad = Vec::Zero(n);
      for (int p = 0; p <= h; ++p) {
        for (int k = 0; k < d; ++k) {
          grad(tqp.varIndex(0, p, k)) = weights(p) * plane.normal(k);
        }
      }
      tqp.prob.Q += params.pref_weight * grad * grad.transpose();
      tqp.prob.q += 2.0 * params.pref_weight * plane.offset * grad;
    }
  }

  return tqp;
}

TrajOptResult optimizeTrajectory(const DiscretePlan& plan, const Snapshot& snap,
                                 const TaskInputs& task, const RlssParams& params) {
  TrajOptResult result;
  auto tqp = buildTrajectoryQp(plan, snap, task, params);
  if (!tqp) {
    result.status = TrajOptStatus::SvmInfeasible;
    return result;
  }
  result.qp = std::move(*tqp);

  const qp::Solution sol = qp::solve(result.qp.prob, params.qp_tolerance);
  if (!sol.ok()) {
    result.status = TrajOptStatus::QpFailure;
    return result;
  }

  const int h = params.bezier_degree;
  const int d = result.qp.dim;
  PiecewiseTrajectory traj;
  for (int i = 0; i < plan.numSegments(); ++i) {
    Mat ctrl(h + 1, d);
    for (int p = 0; p <= h; ++p) {
      for (int k = 0; k < d; ++k) {
        ctrl(p, k) = sol.x(result.qp.varIndex(i, p, k));
      }
    }
    traj.pieces.emplace_back(plan.durations[i], std::move(ctrl));
  }
  result.status = TrajOptStatus::Success;
  result.trajectory = std::move(traj);
  return result;
}

PiecewiseTrajectory discretePlanSpline(const DiscretePlan& plan, int degree) {
  PiecewiseTrajectory traj;
  const int d = static_cast<int>(plan.endpoints.front().size());
  for (int i = 0; i < plan.numSegments(); ++i) {
    Mat ctrl(degree + 1, d);
    const int half = (degree + 1) / 2;
    for (int p = 0; p <= degree; ++p) {
      ctrl.row(p) = (p < half ? plan.endpoints[i] : plan.endpoints[i + 1]).transpose();
    }
    traj.pieces.emplace_back(plan.durations[i], std::move(ctrl));
  }
  return traj;
}

}  // namespace rlss
