#include "rlss/geometry/separation.hpp"

#include "rlss/qp/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace rlss {

namespace {

constexpr double kMinMargin = 1e-9;

Hyperplane bisectorOf(const ClosestPoints& cp) {
  Vec normal = (cp.on_b - cp.on_a) / (cp.on_b - cp.on_a).norm();
  const Vec midpoint = 0.5 * (cp.on_a + cp.on_b);
  return Hyperplane(normal, -normal.dot(midpoint));
}

std::optional<Hyperplane> svmViaQp(const ConvexShape& a, const ConvexShape& b) {
  const int d = a.dim();
  const int n = d + 1;  // normal components plus offset
  const int rows = static_cast<int>(a.vertices.size() + b.vertices.size());

  qp::QuadraticProgram prob = qp::QuadraticProgram::zero(n);
  prob.Q.topLeftCorner(d, d) = Mat::Identity(d, d);
  prob.A.resize(rows, n);
  prob.b = Vec::Constant(rows, -1.0);
  int r = 0;
  for (const Vec& v : a.vertices) {  // w·v + beta <= -1
    prob.A.row(r).head(d) = v.transpose();
    prob.A(r, d) = 1.0;
    ++r;
  }
  for (const Vec& v : b.vertices) {  // w·v + beta >= +1
    prob.A.row(r).head(d) = -v.transpose();
    prob.A(r, d) = -1.0;
    ++r;
  }

  const qp::Solution sol = qp::solve(prob);
  if (!sol.ok()) return std::nullopt;
  const Vec w = sol.x.head(d);
  const double wn = w.norm();
  if (!(wn > 0.0) || !sol.x.allFinite()) return std::nullopt;
  return Hyperplane(w / wn, sol.x(d) / wn);
}

}  // namespace

std::optional<Hyperplane> hardMarginSvm(const ConvexShape& a, const ConvexShape& b) {
  if (a.dim() != b.dim()) {
    throw std::invalid_argument("hardMarginSvm: dimension mismatch");
  }
  const ClosestPoints cp = closestPoints(a, b);
  if (cp.distance <= 2.0 * kMinMargin) return std::nullopt;

  std::optional<Hyperplane> h = svmViaQp(a, b);
  if (h) {
    // The max-margin plane bisects the closest-point pair; a solution whose
    // margin disagrees with the hull distance signals a bad solve.
    double margin_a = std::numeric_limits<double>::infinity();
    double margin_b = std::numeric_limits<double>::infinity();
    for (const Vec& v : a.vertices) margin_a = std::min(margin_a, -h->signedDistance(v));
    for (const Vec& v : b.vertices) margin_b = std::min(margin_b, h->signedDistance(v));
    const double expected = 0.5 * cp.distance;
    if (std::min(margin_a, margin_b) < expected - 1e-6 * (1.0 + expected)) {
      h.reset();
    }
  }
  if (!h) h = bisectorOf(cp);
  return h;
}

Hyperplane bufferHyperplane(const Hyperplane& h, const ConvexShape& base) {
  double max_proj = -std::numeric_limits<double>::infinity();
  for (const Vec& v : base.vertices) {
    max_proj = std::max(max_proj, h.normal.dot(v));
  }
  return Hyperplane(h.normal, h.offset + max_proj);
}

Hyperplane shiftHyperplane(const Hyperplane& h, double dist) {
  if (dist < 0.0) throw std::invalid_argument("shiftHyperplane: dist must be >= 0");
  return Hyperplane(h.normal, h.offset + dist);
}

}  // namespace rlss
