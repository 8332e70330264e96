#pragma once

#include <Eigen/Dense>

#include <vector>

namespace rlss {

/// PSD quadratic form over all stacked control point coordinates of a spline
/// with the given per-piece degrees and durations, such that
///
///   x' H x = sum_j weights[j-1] * integral over [0,T] of |d^j f / dt^j|^2 dt
///
/// with weights[j-1] the weight of derivative order j. Variables are laid out
/// piece-major, control-point-major, coordinate-minor. Assembled per piece
/// from exact closed-form Bernstein product integrals.
Eigen::MatrixXd energyHessian(const std::vector<int>& degrees,
                              const std::vector<double>& durations,
                              const std::vector<double>& weights, int dim);

}  // namespace rlss
