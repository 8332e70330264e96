#pragma once

#include "rlss/curves/bezier.hpp"

#include <vector>

namespace rlss {

/// Spline of Bezier pieces evaluated on global time [0, total duration].
/// Piece boundaries evaluate from the right except the final endpoint,
/// which evaluates from the left.
struct PiecewiseTrajectory {
  std::vector<BezierPiece> pieces;

  double totalDuration() const;
  int dim() const { return pieces.empty() ? 0 : pieces.front().dim(); }

  /// Throws std::out_of_range when t is outside [0, total duration]
  /// (a 1e-9 slack absorbs floating point drift).
  Eigen::VectorXd eval(double t, int deriv = 0) const;

  /// Index of the piece containing global time t plus the local time in it.
  std::pair<int, double> locate(double t) const;
};

/// Upper bound on the max k-th derivative magnitude over the trajectory via
/// the convex hull property of the k-th hodograph (max control point norm).
double maxDerivativeBound(const PiecewiseTrajectory& traj, int k);

/// Multiplies every piece duration by factor (> 1). Control points are
/// untouched, so the geometric path is identical and k-th derivative
/// magnitudes scale by factor^-k.
PiecewiseTrajectory rescaleDurations(PiecewiseTrajectory traj, double factor);

}  // namespace rlss
