#include "rlss/qp/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <vector>

namespace rlss::qp {

namespace {

constexpr double kHessianRegularization = 1e-9;
constexpr double kKktRegularization = 1e-11;
constexpr int kMaxIterations = 100;
constexpr double kStepFraction = 0.995;

using Eigen::MatrixXd;
using Eigen::VectorXd;

struct Constraints {
  MatrixXd A;
  VectorXd b;
  MatrixXd E;
  VectorXd f;
  bool inconsistent = false;
};

// Drops all-zero rows and scales the rest to unit inf-norm.
Constraints prepare(const QuadraticProgram& p, double tol) {
  Constraints c;
  const int n = p.n();
  std::vector<int> arows, erows;
  for (int i = 0; i < p.A.rows(); ++i) {
    if (p.A.row(i).cwiseAbs().maxCoeff() > 1e-14) {
      arows.push_back(i);
    } else if (p.b(i) < -tol) {
      c.inconsistent = true;
    }
  }
  for (int i = 0; i < p.E.rows(); ++i) {
    if (p.E.row(i).cwiseAbs().maxCoeff() > 1e-14) {
      erows.push_back(i);
    } else if (std::abs(p.f(i)) > tol) {
      c.inconsistent = true;
    }
  }
  c.A.resize(static_cast<int>(arows.size()), n);
  c.b.resize(static_cast<int>(arows.size()));
  for (size_t k = 0; k < arows.size(); ++k) {
    const double scale = p.A.row(arows[k]).cwiseAbs().maxCoeff();
    c.A.row(static_cast<int>(k)) = p.A.row(arows[k]) / scale;
    c.b(static_cast<int>(k)) = p.b(arows[k]) / scale;
  }
  c.E.resize(static_cast<int>(erows.size()), n);
  c.f.resize(static_cast<int>(erows.size()));
  for (size_t k = 0; k < erows.size(); ++k) {
    const double scale = p.E.row(erows[k]).cwiseAbs().maxCoeff();
    c.E.row(static_cast<int>(k)) = p.E.row(erows[k]) / scale;
    c.f(static_cast<int>(k)) = p.f(erows[k]) / scale;
  }
  return c;
}

struct FinalCheck {
  bool primal_ok = false;
  bool stationary_ok = false;
};

FinalCheck checkContract(const QuadraticProgram& prob, const MatrixXd& P, const VectorXd& x,
                         const Constraints& con, const VectorXd& y, const VectorXd& z,
                         double tol) {
  FinalCheck out;
  double primal = 0.0;
  if (prob.A.rows() > 0) {
    primal = std::max(primal, (prob.A * x - prob.b).maxCoeff());
  }
  if (prob.E.rows() > 0) {
    primal = std::max(primal, (prob.E * x - prob.f).cwiseAbs().maxCoeff());
  }
  out.primal_ok = primal <= tol;

  VectorXd grad = P * x + prob.q;
  if (con.E.rows() > 0 && y.size() == con.E.rows()) grad += con.E.transpose() * y;
  if (con.A.rows() > 0 && z.size() == con.A.rows()) grad += con.A.transpose() * z;
  out.stationary_ok =
      grad.cwiseAbs().maxCoeff() <= 1e-6 * (1.0 + prob.q.cwiseAbs().maxCoeff());
  return out;
}

Solution solveEqualityConstrained(const QuadraticProgram& prob, const MatrixXd& P,
                                  const Constraints& con, double tol) {
  Solution sol;
  const int n = prob.n();
  const int me = static_cast<int>(con.E.rows());
  VectorXd y = VectorXd::Zero(me);

  if (me == 0) {
    Eigen::LDLT<MatrixXd> ldlt(P);
    sol.x = ldlt.solve(-prob.q);
  } else {
    MatrixXd K = MatrixXd::Zero(n + me, n + me);
    K.topLeftCorner(n, n) = P;
    K.topRightCorner(n, me) = con.E.transpose();
    K.bottomLeftCorner(me, n) = con.E;
    K.bottomRightCorner(me, me).diagonal().array() = -kKktRegularization;
    VectorXd rhs(n + me);
    rhs.head(n) = -prob.q;
    rhs.tail(me) = con.f;
    Eigen::PartialPivLU<MatrixXd> lu(K);
    VectorXd u = lu.solve(rhs);
    u += lu.solve(rhs - K * u);
    sol.x = u.head(n);
    y = u.tail(me);
  }
  if (!sol.x.allFinite()) {
    sol.status = SolveStatus::NumericalFailure;
    sol.x = VectorXd::Zero(n);
    return sol;
  }
  const FinalCheck check = checkContract(prob, P, sol.x, con, y, VectorXd(), tol);
  if (check.primal_ok && check.stationary_ok) {
    sol.status = SolveStatus::Optimal;
  } else if (!check.primal_ok) {
    sol.status = SolveStatus::Infeasible;
  } else {
    sol.status = SolveStatus::NumericalFailure;
  }
  return sol;
}

}  // namespace

Solution InteriorPointSolver::solve(const QuadraticProgram& prob, double tol) const {
  prob.validate();
  const int n = prob.n();

  MatrixXd P = 2.0 * prob.Q;
  P.diagonal().array() += 2.0 * kHessianRegularization;
  const VectorXd& c = prob.q;

  Constraints con = prepare(prob, tol);
  if (con.inconsistent) {
    Solution sol;
    sol.status = SolveStatus::Infeasible;
    sol.x = VectorXd::Zero(n);
    return sol;
  }
  const int mi = static_cast<int>(con.A.rows());
  const int me = static_cast<int>(con.E.rows());

  if (mi == 0) return solveEqualityConstrained(prob, P, con, tol);

  const MatrixXd& A = con.A;
  const VectorXd& b = con.b;
  const MatrixXd& E = con.E;
  const VectorXd& f = con.f;

  // Starting point: equality-constrained minimizer, slacks pushed interior.
  VectorXd x;
  {
    Solution init = solveEqualityConstrained(prob, P, con, tol);
    x = init.x.allFinite() ? init.x : VectorXd::Zero(n);
  }
  VectorXd s = (b - A * x).cwiseMax(1.0);
  VectorXd z = VectorXd::Ones(mi);
  VectorXd y = VectorXd::Zero(me);

  const double scale_p = 1.0 + std::max(b.size() > 0 ? b.cwiseAbs().maxCoeff() : 0.0,
                                        f.size() > 0 ? f.cwiseAbs().maxCoeff() : 0.0);
  const double scale_obj = 1.0 + c.cwiseAbs().maxCoeff();

  Solution sol;
  sol.x = x;

  double best_pinf = std::numeric_limits<double>::infinity();
  int best_pinf_iter = 0;
  bool converged = false;

  const int kkt_dim = n + me;
  MatrixXd K = MatrixXd::Zero(kkt_dim, kkt_dim);
  VectorXd rhs(kkt_dim);

  int iter = 0;
  for (; iter < kMaxIterations; ++iter) {
    VectorXd rd = P * x + c + A.transpose() * z;
    if (me > 0) rd += E.transpose() * y;
    VectorXd rp = me > 0 ? VectorXd(E * x - f) : VectorXd();
    VectorXd rg = A * x + s - b;
    const double mu = s.dot(z) / mi;

    const double pinf = std::max(rg.cwiseAbs().maxCoeff(),
                                 me > 0 ? rp.cwiseAbs().maxCoeff() : 0.0) /
                        scale_p;
    const double dinf = rd.cwiseAbs().maxCoeff() /
                        (scale_obj + (P * x).cwiseAbs().maxCoeff());
    const double gap = mu / (1.0 + std::abs(prob.objective(x)));

    if (pinf <= 1e-11 && dinf <= 1e-10 && gap <= 1e-11) {
      converged = true;
      break;
    }
    if (pinf < best_pinf) {
      best_pinf = pinf;
      best_pinf_iter = iter;
    }
    // Primal residual has stalled far from feasibility: likely infeasible.
    if (iter - best_pinf_iter > 20 && pinf > 1e-7) break;

    const VectorXd w = z.cwiseQuotient(s);
    K.topLeftCorner(n, n) = P + A.transpose() * w.asDiagonal() * A;
    if (me > 0) {
      K.topRightCorner(n, me) = E.transpose();
      K.bottomLeftCorner(me, n) = E;
      K.bottomRightCorner(me, me).setZero();
      K.bottomRightCorner(me, me).diagonal().array() = -kKktRegularization;
    }
    Eigen::PartialPivLU<MatrixXd> lu(K);
    auto solveKkt = [&](const VectorXd& r) {
      VectorXd u = lu.solve(r);
      u += lu.solve(r - K * u);  // one refinement pass
      return u;
    };

    // Affine (predictor) direction: rc = -s.*z, so rc./s = -z.
    rhs.head(n) = -rd - A.transpose() * (w.cwiseProduct(rg) - z);
    if (me > 0) rhs.tail(me) = -rp;
    VectorXd u = solveKkt(rhs);
    VectorXd dx = u.head(n);
    VectorXd dz = w.cwiseProduct(A * dx + rg) - z;
    VectorXd ds = -rg - A * dx;

    double alpha_p = 1.0, alpha_d = 1.0;
    for (int i = 0; i < mi; ++i) {
      if (ds(i) < 0.0) alpha_p = std::min(alpha_p, -s(i) / ds(i));
      if (dz(i) < 0.0) alpha_d = std::min(alpha_d, -z(i) / dz(i));
    }
    const double mu_aff = (s + alpha_p * ds).dot(z + alpha_d * dz) / mi;
    double sigma = std::pow(mu_aff / mu, 3);
    sigma = std::clamp(sigma, 0.0, 1.0);

    // Corrector: rc = sigma*mu - ds_aff.*dz_aff - s.*z.
    const VectorXd rc = VectorXd::Constant(mi, sigma * mu) - ds.cwiseProduct(dz) -
                        s.cwiseProduct(z);
    rhs.head(n) = -rd - A.transpose() * (w.cwiseProduct(rg) + rc.cwiseQuotient(s));
    if (me > 0) rhs.tail(me) = -rp;
    u = solveKkt(rhs);
    dx = u.head(n);
    VectorXd dy = me > 0 ? VectorXd(u.tail(me)) : VectorXd();
    dz = w.cwiseProduct(A * dx + rg) + rc.cwiseQuotient(s);
    ds = -rg - A * dx;

    alpha_p = 1.0;
    alpha_d = 1.0;
    for (int i = 0; i < mi; ++i) {
      if (ds(i) < 0.0) alpha_p = std::min(alpha_p, -s(i) / ds(i));
      if (dz(i) < 0.0) alpha_d = std::min(alpha_d, -z(i) / dz(i));
    }
    alpha_p = std::min(1.0, kStepFraction * alpha_p);
    alpha_d = std::min(1.0, kStepFraction * alpha_d);

    x += alpha_p * dx;
    s += alpha_p * ds;
    z += alpha_d * dz;
    if (me > 0) y += alpha_d * dy;

    if (!x.allFinite() || !s.allFinite() || !z.allFinite()) break;
  }

  sol.iterations = iter;
  sol.x = x;
  if (!x.allFinite()) {
    sol.status = SolveStatus::NumericalFailure;
    return sol;
  }
  const FinalCheck check = checkContract(prob, P, x, con, y, z, tol);
  if (check.primal_ok && (converged || check.stationary_ok)) {
    sol.status = SolveStatus::Optimal;
  } else if (!check.primal_ok) {
    sol.status = SolveStatus::Infeasible;
  } else {
    sol.status = SolveStatus::NumericalFailure;
  }
  return sol;
}

namespace {

std::mutex g_backend_mutex;
std::shared_ptr<const SolverBackend> g_backend;

std::shared_ptr<const SolverBackend> backend() {
  std::lock_guard<std::mutex> lock(g_backend_mutex);
  if (!g_backend) g_backend = std::make_shared<InteriorPointSolver>();
  return g_backend;
}

}  // namespace

Solution solve(const QuadraticProgram& prob, double tol) {
  return backend()->solve(prob, tol);
}

void setDefaultBackend(std::shared_ptr<const SolverBackend> b) {
  std::lock_guard<std::mutex> lock(g_backend_mutex);
  g_backend = std::move(b);
}

}  // namespace rlss::qp
