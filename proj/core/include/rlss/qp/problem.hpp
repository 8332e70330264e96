#pragma once

#include <Eigen/Dense>

namespace rlss::qp {

/// Convex quadratic program
///
///   minimize    x' Q x + q' x
///   subject to  A x <= b
///               E x  = f
///
/// Q must be symmetric positive semidefinite. Constraint blocks may be empty
/// (0 rows). Note the objective carries no 1/2 factor: the value of the
/// quadratic form is x' Q x itself.
struct QuadraticProgram {
  Eigen::MatrixXd Q;
  Eigen::VectorXd q;
  Eigen::MatrixXd A;
  Eigen::VectorXd b;
  Eigen::MatrixXd E;
  Eigen::VectorXd f;

  static QuadraticProgram zero(int n);

  int n() const { return static_cast<int>(Q.rows()); }
  int numInequalities() const { return static_cast<int>(A.rows()); }
  int numEqualities() const { return static_cast<int>(E.rows()); }

  double objective(const Eigen::VectorXd& x) const;

  /// Throws std::invalid_argument on dimension mismatch or asymmetric Q
  /// (tolerance 1e-9).
  void validate() const;
};

}  // namespace rlss::qp
