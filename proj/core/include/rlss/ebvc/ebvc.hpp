#pragma once

#include "rlss/env/workspace.hpp"
#include "rlss/geometry/types.hpp"
#include "rlss/qp/solver.hpp"

#include <utility>
#include <vector>

namespace rlss::ebvc {

/// Discrete linear time-invariant system with position output:
///   x[i+1] = A x[i] + B u[i],   p[i] = C x[i].
struct LtiSystem {
  Mat A;
  Mat B;
  Mat C;

  int stateDim() const { return static_cast<int>(A.rows()); }
  int inputDim() const { return static_cast<int>(B.cols()); }
  int outputDim() const { return static_cast<int>(C.rows()); }

  /// Chain of `order` integrators in `dim` axes discretized at dt (order 2
  /// is the double integrator: state [p, v], input acceleration).
  static LtiSystem integratorChain(int order, int dim, double dt);
};

struct EbvcParams {
  int horizon_steps = 20;                    // M
  double dt = 0.1;                           // discretization step
  std::vector<double> goal_weights = {120.0, 20.0};  // lambda_i, last repeats
  std::vector<double> input_weights = {1.0};         // theta_i, last repeats
  Vec u_min, u_max;  // componentwise input bounds
  Vec x_min, x_max;  // componentwise state bounds (+-inf entries are skipped)
  double radius = 0.2;       // bounding sphere of the robot shape
  double check_distance = 2.0;  // neighbors beyond this generate no halfspace

  double goalWeight(int step_one_based) const;
  double inputWeight(int step_zero_based) const;
};

/// Buffered Voronoi cell: one bisector halfspace per neighbor, shifted toward
/// the ego robot by its own radius. An empty neighbor list yields all of R^d.
HPolytope bvcCell(const Vec& self_pos, double self_radius,
                  const std::vector<std::pair<Vec, double>>& others);

struct EbvcStep {
  qp::SolveStatus status = qp::SolveStatus::NumericalFailure;
  Vec input;  // first input of the solved horizon; zero on failure
};

/// One-step-applied MPC: solves the M-step QP tracking goal_pos subject to
/// dynamics, cell and workspace membership of all positions, and input/state
/// box bounds; returns only the first input.
EbvcStep ebvcStep(const Vec& x0, const Vec& goal_pos, const HPolytope& cell,
                  const LtiSystem& sys, const Workspace& ws, const EbvcParams& params);

}  // namespace rlss::ebvc
