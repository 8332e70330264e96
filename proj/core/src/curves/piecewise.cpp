#include "rlss/curves/piecewise.hpp"

#include <algorithm>
#include <stdexcept>

namespace rlss {

double PiecewiseTrajectory::totalDuration() const {
  double total = 0.0;
  for (const BezierPiece& p : pieces) total += p.duration;
  return total;
}

std::pair<int, double> PiecewiseTrajectory::locate(double t) const {
  if (pieces.empty()) throw std::out_of_range("PiecewiseTrajectory: empty");
  const double total = totalDuration();
  if (t < -1e-9 || t > total + 1e-9) {
    throw std::out_of_range("PiecewiseTrajectory: time outside [0, T]");
  }
  t = std::clamp(t, 0.0, total);
  double start = 0.0;
  for (int i = 0; i + 1 < static_cast<int>(pieces.size()); ++i) {
    if (t < start + pieces[i].duration) return {i, t - start};
    start += pieces[i].duration;
  }
  return {static_cast<int>(pieces.size()) - 1, t - start};
}

Eigen::VectorXd PiecewiseTrajectory::eval(double t, int deriv) const {
  const auto [idx, local] = locate(t);
  return pieces[idx].eval(local, deriv);
}

double maxDerivativeBound(const PiecewiseTrajectory& traj, int k) {
  if (k < 1) throw std::invalid_argument("maxDerivativeBound: k must be >= 1");
  double bound = 0.0;
  for (const BezierPiece& p : traj.pieces) {
    const Eigen::MatrixXd pts = p.hodograph(k);
    for (int i = 0; i < pts.rows(); ++i) {
      bound = std::max(bound, pts.row(i).norm());
    }
  }
  return bound;
}

PiecewiseTrajectory rescaleDurations(PiecewiseTrajectory traj, double factor) {
  if (!(factor > 1.0)) {
    throw std::invalid_argument("rescaleDurations: factor must be > 1");
  }
  for (BezierPiece& p : traj.pieces) p.duration *= factor;
  return traj;
}

}  // namespace rlss
