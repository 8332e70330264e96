#include "rlss/curves/bezier.hpp"

#include <cmath>
#include <stdexcept>

namespace rlss {

namespace {

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  k = std::min(k, n - k);
  double r = 1.0;
  for (int i = 1; i <= k; ++i) {
    r *= static_cast<double>(n - k + i) / static_cast<double>(i);
  }
  return r;
}

}  // namespace

BezierPiece::BezierPiece(double T, Eigen::MatrixXd control_points)
    : duration(T), ctrl(std::move(control_points)) {
  if (!(duration > 0.0)) {
    throw std::invalid_argument("BezierPiece: duration must be positive");
  }
  if (ctrl.rows() < 1 || ctrl.cols() < 1 || !ctrl.allFinite()) {
    throw std::invalid_argument("BezierPiece: invalid control points");
  }
}

Eigen::MatrixXd BezierPiece::hodograph(int k) const {
  if (k < 0) throw std::invalid_argument("BezierPiece::hodograph: k must be >= 0");
  if (k > degree()) return Eigen::MatrixXd::Zero(1, dim());
  Eigen::MatrixXd pts = ctrl;
  for (int step = 0; step < k; ++step) {
    const int m = static_cast<int>(pts.rows()) - 1;
    pts = (bezierDiffMatrix(m, duration) * pts).eval();
  }
  return pts;
}

Eigen::VectorXd BezierPiece::eval(double t, int deriv) const {
  Eigen::MatrixXd pts = hodograph(deriv);
  const double u = std::clamp(t / duration, 0.0, 1.0);
  // De Casteljau on the rows.
  int m = static_cast<int>(pts.rows());
  while (m > 1) {
    for (int i = 0; i + 1 < m; ++i) {
      pts.row(i) = (1.0 - u) * pts.row(i) + u * pts.row(i + 1);
    }
    --m;
  }
  return pts.row(0).transpose();
}

BezierPiece BezierPiece::derivative() const {
  return BezierPiece(duration, hodograph(1));
}

Eigen::MatrixXd bezierDiffMatrix(int degree, double T) {
  if (degree < 1) throw std::invalid_argument("bezierDiffMatrix: degree must be >= 1");
  Eigen::MatrixXd D = Eigen::MatrixXd::Zero(degree, degree + 1);
  const double s = static_cast<double>(degree) / T;
  for (int i = 0; i < degree; ++i) {
    D(i, i) = -s;
    D(i, i + 1) = s;
  }
  return D;
}

Eigen::RowVectorXd bezierEndpointDerivativeRow(int degree, double T, int j, bool at_end) {
  if (j < 0) throw std::invalid_argument("bezierEndpointDerivativeRow: j must be >= 0");
  if (j > degree) return Eigen::RowVectorXd::Zero(degree + 1);
  Eigen::MatrixXd M = Eigen::MatrixXd::Identity(degree + 1, degree + 1);
  int m = degree;
  for (int step = 0; step < j; ++step) {
    M = (bezierDiffMatrix(m, T) * M).eval();
    --m;
  }
  return at_end ? M.row(M.rows() - 1) : M.row(0);
}

Eigen::VectorXd bernsteinBasis(int degree, double u) {
  Eigen::VectorXd w(degree + 1);
  for (int i = 0; i <= degree; ++i) {
    w(i) = binomial(degree, i) * std::pow(u, i) * std::pow(1.0 - u, degree - i);
  }
  return w;
}

Eigen::MatrixXd bernsteinGram(int degree, double T) {
  const int m = degree;
  Eigen::MatrixXd G(m + 1, m + 1);
  for (int i = 0; i <= m; ++i) {
    for (int j = i; j <= m; ++j) {
      const double v =
          T * binomial(m, i) * binomial(m, j) / ((2.0 * m + 1.0) * binomial(2 * m, i + j));
      G(i, j) = v;
      G(j, i) = v;
    }
  }
  return G;
}

}  // namespace rlss
