#include "rlss/ebvc/ebvc.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace rlss::ebvc {

LtiSystem LtiSystem::integratorChain(int order, int dim, double dt) {
  if (order < 1 || dim < 1 || !(dt > 0.0)) {
    throw std::invalid_argument("integratorChain: invalid parameters");
  }
  const int nx = order * dim;
  LtiSystem sys;
  sys.A = Mat::Identity(nx, nx);
  sys.B = Mat::Zero(nx, dim);
  sys.C = Mat::Zero(dim, nx);
  // Exact discretization of d^order p / dt^order = u.
  for (int r = 0; r < order; ++r) {
    double coeff = 1.0;
    for (int c = r + 1; c < order; ++c) {
      coeff *= dt / static_cast<double>(c - r);
      sys.A.block(r * dim, c * dim, dim, dim) = coeff * Mat::Identity(dim, dim);
    }
    double bcoeff = 1.0;
    for (int k = 0; k < order - r; ++k) bcoeff *= dt / static_cast<double>(k + 1);
    sys.B.block(r * dim, 0, dim, dim) = bcoeff * Mat::Identity(dim, dim);
  }
  sys.C.leftCols(dim) = Mat::Identity(dim, dim);
  return sys;
}

double EbvcParams::goalWeight(int step_one_based) const {
  if (goal_weights.empty()) return 0.0;
  const size_t idx = static_cast<size_t>(step_one_based - 1);
  return idx < goal_weights.size() ? goal_weights[idx] : goal_weights.back();
}

double EbvcParams::inputWeight(int step_zero_based) const {
  if (input_weights.empty()) return 0.0;
  const size_t idx = static_cast<size_t>(step_zero_based);
  return idx < input_weights.size() ? input_weights[idx] : input_weights.back();
}

HPolytope bvcCell(const Vec& self_pos, double self_radius,
                  const std::vector<std::pair<Vec, double>>& others) {
  HPolytope cell;
  for (const auto& [pos, radius] : others) {
    (void)radius;
    const Vec diff = pos - self_pos;
    const double dist = diff.norm();
    if (!(dist > 0.0)) {
      throw std::invalid_argument("bvcCell: coincident centers");
    }
    const Vec normal = diff / dist;
    const Vec midpoint = 0.5 * (self_pos + pos);
    // Bisector shifted toward the ego robot by its own radius; the neighbor
    // buffers its side by its own radius, so the buffers sum to the required
    // separation.
    cell.halfspaces.emplace_back(normal, -normal.dot(midpoint) + self_radius);
  }
  return cell;
}

EbvcStep ebvcStep(const Vec& x0, const Vec& goal_pos, const HPolytope& cell,
                  const LtiSystem& sys, const Workspace& ws, const EbvcParams& params) {
  const int nx = sys.stateDim();
  const int nu = sys.inputDim();
  const int d = sys.outputDim();
  const int M = params.horizon_steps;
  if (x0.size() != nx) throw std::invalid_argument("ebvcStep: state dimension mismatch");
  const int n = M * nu;

  // Condensed prediction: x_i = A^i x0 + sum_j A^(i-1-j) B u_j.
  std::vector<Mat> state_gain(M + 1);   // nx x n
  std::vector<Vec> state_free(M + 1);   // nx
  state_gain[0] = Mat::Zero(nx, n);
  state_free[0] = x0;
  for (int i = 1; i <= M; ++i) {
    state_gain[i] = sys.A * state_gain[i - 1];
    state_gain[i].middleCols((i - 1) * nu, nu) += sys.B;
    state_free[i] = sys.A * state_free[i - 1];
  }

  qp::QuadraticProgram prob = qp::QuadraticProgram::zero(n);
  for (int i = 1; i <= M; ++i) {
    const double lambda = params.goalWeight(i);
    if (lambda > 0.0) {
      const Mat G = sys.C * state_gain[i];
      const Vec r = sys.C * state_free[i] - goal_pos;
      prob.Q += lambda * G.transpose() * G;
      prob.q += 2.0 * lambda * G.transpose() * r;
    }
  }
  for (int i = 0; i < M; ++i) {
    const double theta = params.inputWeight(i);
    for (int k = 0; k < nu; ++k) {
      prob.Q(i * nu + k, i * nu + k) += theta;
    }
  }

  // Constraint rows: cell and workspace membership of p_1..p_M, input box
  // bounds, finite state box bounds.
  std::vector<Eigen::RowVectorXd> rows;
  std::vector<double> rhs;
  auto addRow = [&](const Eigen::RowVectorXd& row, double b) {
    rows.push_back(row);
    rhs.push_back(b);
  };

  std::vector<Hyperplane> position_planes = cell.halfspaces;
  position_planes.insert(position_planes.end(), ws.polytope.halfspaces.begin(),
                         ws.polytope.halfspaces.end());
  for (int i = 1; i <= M; ++i) {
    const Mat G = sys.C * state_gain[i];
    const Vec base = sys.C * state_free[i];
    for (const Hyperplane& h : position_planes) {
      addRow(h.normal.transpose() * G, -h.offset - h.normal.dot(base));
    }
  }
  for (int i = 0; i < M; ++i) {
    for (int k = 0; k < nu; ++k) {
      if (params.u_max.size() == nu && std::isfinite(params.u_max(k))) {
        Eigen::RowVectorXd row = Eigen::RowVectorXd::Zero(n);
        row(i * nu + k) = 1.0;
        addRow(row, params.u_max(k));
      }
      if (params.u_min.size() == nu && std::isfinite(params.u_min(k))) {
        Eigen::RowVectorXd row = Eigen::RowVectorXd::Zero(n);
        row(i * nu + k) = -1.0;
        addRow(row, -params.u_min(k));
      }
    }
  }
  for (int i = 1; i <= M; ++i) {
    for (int k = 0; k < nx; ++k) {
      const bool has_max = params.x_max.size() == nx && std::isfinite(params.x_max(k));
      const bool has_min = params.x_min.size() == nx && std::isfinite(params.x_min(k));
      if (has_max) {
        addRow(state_gain[i].row(k), params.x_max(k) - state_free[i](k));
      }
      if (has_min) {
        addRow(-state_gain[i].row(k), state_free[i](k) - params.x_min(k));
      }
    }
  }

  prob.A = Mat::Zero(static_cast<int>(rows.size()), n);
  prob.b = Vec::Zero(static_cast<int>(rows.size()));
  for (size_t r = 0; r < rows.size(); ++r) {
    prob.A.row(static_cast<int>(r)) = rows[r];
    prob.b(static_cast<int>(r)) = rhs[r];
  }

  EbvcStep out;
  const qp::Solution sol = qp::solve(prob);
  out.status = sol.status;
  out.input = sol.ok() ? Vec(sol.x.head(nu)) : Vec(Vec::Zero(nu));
  (void)d;
  return out;
}

}  // namespace rlss::ebvc
