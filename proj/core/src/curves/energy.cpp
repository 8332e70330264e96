#include "rlss/curves/energy.hpp"

#include "rlss/curves/bezier.hpp"

#include <stdexcept>

namespace rlss {

Eigen::MatrixXd energyHessian(const std::vector<int>& degrees,
                              const std::vector<double>& durations,
                              const std::vector<double>& weights, int dim) {
  if (degrees.size() != durations.size()) {
    throw std::invalid_argument("energyHessian: degrees/durations size mismatch");
  }
  int total = 0;
  for (int h : degrees) {
    if (h < 0) throw std::invalid_argument("energyHessian: negative degree");
    total += (h + 1) * dim;
  }
  for (double w : weights) {
    if (w < 0.0) throw std::invalid_argument("energyHessian: weights must be >= 0");
  }

  Eigen::MatrixXd H = Eigen::MatrixXd::Zero(total, total);
  int offset = 0;
  for (size_t piece = 0; piece < degrees.size(); ++piece) {
    const int h = degrees[piece];
    const double T = durations[piece];
    if (!(T > 0.0)) throw std::invalid_argument("energyHessian: durations must be > 0");

    Eigen::MatrixXd B = Eigen::MatrixXd::Zero(h + 1, h + 1);
    Eigen::MatrixXd M = Eigen::MatrixXd::Identity(h + 1, h + 1);
    int m = h;
    for (size_t j = 0; j < weights.size(); ++j) {
      if (m < 1) break;  // higher derivatives vanish
      M = (bezierDiffMatrix(m, T) * M).eval();
      --m;
      if (weights[j] == 0.0) continue;
      B += weights[j] * M.transpose() * bernsteinGram(m, T) * M;
    }
    B = (0.5 * (B + B.transpose())).eval();  // scrub roundoff asymmetry

    // Expand the scalar form over coordinates (block Kronecker with I_dim).
    for (int a = 0; a <= h; ++a) {
      for (int b = 0; b <= h; ++b) {
        for (int k = 0; k < dim; ++k) {
          H(offset + a * dim + k, offset + b * dim + k) += B(a, b);
        }
      }
    }
    offset += (h + 1) * dim;
  }
  return H;
}

}  // namespace rlss
