#pragma once

#include <Eigen/Dense>

namespace rlss {

/// Single Bezier curve piece of degree h over local time [0, duration],
/// stored as an (h+1) x d control point matrix (one point per row).
struct BezierPiece {
  double duration = 1.0;
  Eigen::MatrixXd ctrl;

  BezierPiece() = default;
  BezierPiece(double T, Eigen::MatrixXd control_points);

  int degree() const { return static_cast<int>(ctrl.rows()) - 1; }
  int dim() const { return static_cast<int>(ctrl.cols()); }

  /// deriv-th derivative at local time t in [0, duration].
  Eigen::VectorXd eval(double t, int deriv = 0) const;

  /// Hodograph: control points of the first derivative, same duration.
  /// A degree-0 piece yields the zero curve so the chain stays total.
  BezierPiece derivative() const;

  /// Control points of the k-th derivative curve (single zero row when the
  /// derivative order exceeds the degree).
  Eigen::MatrixXd hodograph(int k) const;
};

/// Differentiation matrix for a degree-m Bezier piece of duration T: maps
/// m+1 control points to the m control points of the derivative curve.
Eigen::MatrixXd bezierDiffMatrix(int degree, double T);

/// Coefficient row mapping a piece's control points to the j-th derivative
/// evaluated at local time 0 (at_end = false) or duration (at_end = true).
Eigen::RowVectorXd bezierEndpointDerivativeRow(int degree, double T, int j, bool at_end);

/// Bernstein basis values B_{i,degree}(u) for u in [0, 1].
Eigen::VectorXd bernsteinBasis(int degree, double u);

/// Exact Bernstein product integrals: G(i,j) = integral over [0,T] of
/// B_{i,m}(t/T) B_{j,m}(t/T) dt = T * C(m,i) C(m,j) / ((2m+1) C(2m,i+j)).
Eigen::MatrixXd bernsteinGram(int degree, double T);

}  // namespace rlss
