#include "rlss/qp/problem.hpp"

#include <stdexcept>

namespace rlss::qp {

QuadraticProgram QuadraticProgram::zero(int n) {
  QuadraticProgram p;
  p.Q = Eigen::MatrixXd::Zero(n, n);
  p.q = Eigen::VectorXd::Zero(n);
  p.A = Eigen::MatrixXd::Zero(0, n);
  p.b = Eigen::VectorXd::Zero(0);
  p.E = Eigen::MatrixXd::Zero(0, n);
  p.f = Eigen::VectorXd::Zero(0);
  return p;
}

double QuadraticProgram::objective(const Eigen::VectorXd& x) const {
  return x.dot(Q * x) + q.dot(x);
}

void QuadraticProgram::validate() const {
  const int nv = n();
  if (Q.cols() != nv || q.size() != nv) {
    throw std::invalid_argument("QuadraticProgram: cost dimension mismatch");
  }
  if (A.rows() != b.size() || (A.rows() > 0 && A.cols() != nv)) {
    throw std::invalid_argument("QuadraticProgram: inequality dimension mismatch");
  }
  if (E.rows() != f.size() || (E.rows() > 0 && E.cols() != nv)) {
    throw std::invalid_argument("QuadraticProgram: equality dimension mismatch");
  }
  if ((Q - Q.transpose()).cwiseAbs().maxCoeff() > 1e-9) {
    throw std::invalid_argument("QuadraticProgram: Q must be symmetric");
  }
}

}  // namespace rlss::qp
