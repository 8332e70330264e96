#pragma once

#include "rlss/qp/problem.hpp"

#include <memory>

namespace rlss::qp {

enum class SolveStatus {
  Optimal,
  Infeasible,
  NumericalFailure,
};

struct Solution {
  SolveStatus status = SolveStatus::NumericalFailure;
  Eigen::VectorXd x;
  int iterations = 0;

  bool ok() const { return status == SolveStatus::Optimal; }
};

/// Backend seam: the planner only depends on this interface, so an external
/// solver can be swapped in without touching call sites.
class SolverBackend {
 public:
  virtual ~SolverBackend() = default;
  virtual Solution solve(const QuadraticProgram& prob, double tol) const = 0;
};

/// Dense primal-dual interior point method (Mehrotra predictor-corrector)
/// for small dense convex QPs. The Hessian is regularized as Q + 1e-9 I.
class InteriorPointSolver final : public SolverBackend {
 public:
  Solution solve(const QuadraticProgram& prob, double tol) const override;
};

constexpr double kDefaultTolerance = 1e-8;

/// Solves with the process-wide backend (interior point unless replaced).
Solution solve(const QuadraticProgram& prob, double tol = kDefaultTolerance);

/// Replaces the default backend; passing nullptr restores the built-in one.
void setDefaultBackend(std::shared_ptr<const SolverBackend> backend);

}  // namespace rlss::qp
