#include "rlss/geometry/types.hpp"

#include <cmath>
#include <stdexcept>

namespace rlss {

namespace {

void checkFinite(const Vec& v, const char* what) {
  if (!v.allFinite()) {
    throw std::invalid_argument(std::string(what) + ": components must be finite");
  }
}

}  // namespace

ConvexShape::ConvexShape(std::vector<Vec> verts) : vertices(std::move(verts)) {
  if (vertices.empty()) {
    throw std::invalid_argument("ConvexShape: vertex list must be nonempty");
  }
  const auto d = vertices.front().size();
  for (const Vec& v : vertices) {
    if (v.size() != d) {
      throw std::invalid_argument("ConvexShape: inconsistent vertex dimensions");
    }
    checkFinite(v, "ConvexShape");
  }
}

ConvexShape ConvexShape::box(const Vec& half_extents) {
  const int d = static_cast<int>(half_extents.size());
  if (d < 1) throw std::invalid_argument("ConvexShape::box: empty extents");
  std::vector<Vec> verts;
  verts.reserve(static_cast<size_t>(1) << d);
  for (int mask = 0; mask < (1 << d); ++mask) {
    Vec v(d);
    for (int k = 0; k < d; ++k) {
      v(k) = (mask & (1 << k)) ? half_extents(k) : -half_extents(k);
    }
    verts.push_back(std::move(v));
  }
  return ConvexShape(std::move(verts));
}

Hyperplane::Hyperplane(Vec n, double a) : normal(std::move(n)), offset(a) {
  checkFinite(normal, "Hyperplane");
  if (!std::isfinite(offset)) {
    throw std::invalid_argument("Hyperplane: offset must be finite");
  }
  if (std::abs(normal.norm() - 1.0) > 1e-9) {
    throw std::invalid_argument("Hyperplane: normal must be unit length");
  }
}

bool HPolytope::contains(const Vec& x, double tol) const {
  for (const Hyperplane& h : halfspaces) {
    if (h.signedDistance(x) > tol) return false;
  }
  return true;
}

AlignedBox::AlignedBox(Vec mn, Vec mx) : min(std::move(mn)), max(std::move(mx)) {
  if (min.size() != max.size()) {
    throw std::invalid_argument("AlignedBox: dimension mismatch");
  }
  checkFinite(min, "AlignedBox");
  checkFinite(max, "AlignedBox");
  if (((max - min).array() < 0.0).any()) {
    throw std::invalid_argument("AlignedBox: min must be <= max componentwise");
  }
}

bool AlignedBox::contains(const Vec& x) const {
  return (x.array() >= min.array()).all() && (x.array() <= max.array()).all();
}

bool AlignedBox::intersects(const AlignedBox& other) const {
  return (min.array() <= other.max.array()).all() &&
         (max.array() >= other.min.array()).all();
}

AlignedBox AlignedBox::inflated(double margin) const {
  return AlignedBox(min.array() - margin, max.array() + margin);
}

ConvexShape AlignedBox::corners() const {
  const int d = dim();
  std::vector<Vec> verts;
  verts.reserve(static_cast<size_t>(1) << d);
  for (int mask = 0; mask < (1 << d); ++mask) {
    Vec v(d);
    for (int k = 0; k < d; ++k) {
      v(k) = (mask & (1 << k)) ? max(k) : min(k);
    }
    verts.push_back(std::move(v));
  }
  return ConvexShape(std::move(verts));
}

ConvexShape placeShape(const ConvexShape& base, const Vec& p) {
  if (base.dim() != p.size()) {
    throw std::invalid_argument("placeShape: dimension mismatch");
  }
  std::vector<Vec> verts;
  verts.reserve(base.vertices.size());
  for (const Vec& v : base.vertices) verts.push_back(v + p);
  return ConvexShape(std::move(verts));
}

ConvexShape sweptHull(const ConvexShape& base, const Vec& a, const Vec& b) {
  std::vector<Vec> verts;
  verts.reserve(2 * base.vertices.size());
  for (const Vec& v : base.vertices) verts.push_back(v + a);
  if ((a - b).norm() > 0.0) {
    for (const Vec& v : base.vertices) verts.push_back(v + b);
  }
  return ConvexShape(std::move(verts));
}

AlignedBox boundsOf(const ConvexShape& shape) {
  Vec lo = shape.vertices.front();
  Vec hi = shape.vertices.front();
  for (const Vec& v : shape.vertices) {
    lo = lo.cwiseMin(v);
    hi = hi.cwiseMax(v);
  }
  return AlignedBox(std::move(lo), std::move(hi));
}

}  // namespace rlss
