#include "rlss/geometry/distance.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace rlss {

namespace {

constexpr int kMaxGjkIterations = 128;
constexpr double kRelTolerance = 1e-14;

int supportIndex(const ConvexShape& s, const Vec& dir) {
  int best = 0;
  double best_dot = s.vertices[0].dot(dir);
  for (int i = 1; i < static_cast<int>(s.vertices.size()); ++i) {
    const double dot = s.vertices[i].dot(dir);
    if (dot > best_dot) {
      best_dot = dot;
      best = i;
    }
  }
  return best;
}

struct SimplexVertex {
  Vec m;  // point in the Minkowski difference A - B
  Vec a;
  Vec b;
};

struct SimplexResult {
  Vec point;                  // closest point of the simplex to the origin
  std::vector<double> bary;   // barycentric weights of the kept vertices
  std::vector<int> keep;      // indices into the input simplex
};

SimplexResult closestOnPoint(const std::vector<SimplexVertex>& w) {
  return {w[0].m, {1.0}, {0}};
}

SimplexResult closestOnSegment(const std::vector<SimplexVertex>& w, int ia, int ib) {
  const Vec& a = w[ia].m;
  const Vec& b = w[ib].m;
  const Vec ab = b - a;
  const double len2 = ab.squaredNorm();
  if (len2 <= 0.0) return {a, {1.0}, {ia}};
  double t = -a.dot(ab) / len2;
  if (t <= 0.0) return {a, {1.0}, {ia}};
  if (t >= 1.0) return {b, {1.0}, {ib}};
  return {a + t * ab, {1.0 - t, t}, {ia, ib}};
}

SimplexResult closestOnTriangle(const std::vector<SimplexVertex>& w, int ia, int ib, int ic) {
  const Vec& a = w[ia].m;
  const Vec& b = w[ib].m;
  const Vec& c = w[ic].m;
  const Vec ab = b - a;
  const Vec ac = c - a;
  const Vec ap = -a;

  const double d1 = ab.dot(ap);
  const double d2 = ac.dot(ap);
  if (d1 <= 0.0 && d2 <= 0.0) return {a, {1.0}, {ia}};

  const Vec bp = -b;
  const double d3 = ab.dot(bp);
  const double d4 = ac.dot(bp);
  if (d3 >= 0.0 && d4 <= d3) return {b, {1.0}, {ib}};

  const double vc = d1 * d4 - d3 * d2;
  if (vc <= 0.0 && d1 >= 0.0 && d3 <= 0.0) {
    const double v = d1 / (d1 - d3);
    return {a + v * ab, {1.0 - v, v}, {ia, ib}};
  }

  const Vec cp = -c;
  const double d5 = ab.dot(cp);
  const double d6 = ac.dot(cp);
  if (d6 >= 0.0 && d5 <= d6) return {c, {1.0}, {ic}};

  const double vb = d5 * d2 - d1 * d6;
  if (vb <= 0.0 && d2 >= 0.0 && d6 <= 0.0) {
    const double t = d2 / (d2 - d6);
    return {a + t * ac, {1.0 - t, t}, {ia, ic}};
  }

  const double va = d3 * d6 - d5 * d4;
  if (va <= 0.0 && (d4 - d3) >= 0.0 && (d5 - d6) >= 0.0) {
    const double t = (d4 - d3) / ((d4 - d3) + (d5 - d6));
    return {b + t * (c - b), {1.0 - t, t}, {ib, ic}};
  }

  const double denom_sum = va + vb + vc;
  if (!(std::abs(denom_sum) > 0.0)) {
    // Degenerate (collinear) triangle: best edge wins.
    SimplexResult best = closestOnSegment(w, ia, ib);
    SimplexResult r = closestOnSegment(w, ia, ic);
    if (r.point.squaredNorm() < best.point.squaredNorm()) best = r;
    r = closestOnSegment(w, ib, ic);
    if (r.point.squaredNorm() < best.point.squaredNorm()) best = r;
    return best;
  }

  const double denom = 1.0 / denom_sum;
  const double v = vb * denom;
  const double t = vc * denom;
  return {a + v * ab + t * ac, {1.0 - v - t, v, t}, {ia, ib, ic}};
}

SimplexResult closestOnTetrahedron(const std::vector<SimplexVertex>& w) {
  // Tests the origin against each face; if it is strictly inside all
  // non-degenerate faces the hulls intersect and the closest point is the
  // origin itself. Degenerate (flat) tetrahedra fall back to face results.
  const std::array<std::array<int, 4>, 4> faces = {{
      {{0, 1, 2, 3}}, {{0, 1, 3, 2}}, {{0, 2, 3, 1}}, {{1, 2, 3, 0}}}};

  bool have_best = false;
  SimplexResult best;
  bool all_faces_sound = true;
  bool outside_some_face = false;
  for (const auto& f : faces) {
    const Eigen::Vector3d a = w[f[0]].m;
    const Eigen::Vector3d b = w[f[1]].m;
    const Eigen::Vector3d c = w[f[2]].m;
    const Eigen::Vector3d d = w[f[3]].m;
    const Eigen::Vector3d n = (b - a).cross(c - a);
    const double signp = (-a).dot(n);
    const double signd = (d - a).dot(n);
    const double scale = n.norm() * (d - a).norm();
    const bool degenerate = std::abs(signd) <= 1e-14 * std::max(1.0, scale);
    if (degenerate) all_faces_sound = false;
    if (!degenerate && signp * signd < 0.0) outside_some_face = true;

    SimplexResult r = closestOnTriangle(w, f[0], f[1], f[2]);
    if (!have_best || r.point.squaredNorm() < best.point.squaredNorm()) {
      best = std::move(r);
      have_best = true;
    }
  }
  if (all_faces_sound && !outside_some_face) {
    Vec zero = Vec::Zero(3);
    return {zero, {0.25, 0.25, 0.25, 0.25}, {0, 1, 2, 3}};
  }
  return best;
}

SimplexResult closestOnSimplex(const std::vector<SimplexVertex>& w) {
  switch (w.size()) {
    case 1:
      return closestOnPoint(w);
    case 2:
      return closestOnSegment(w, 0, 1);
    case 3:
      return closestOnTriangle(w, 0, 1, 2);
    case 4:
      return closestOnTetrahedron(w);
    default:
      throw std::logic_error("closestOnSimplex: invalid simplex size");
  }
}

double projectOntoAxis(const std::vector<Vec>& pts, const Vec& axis, double& lo, double& hi) {
  lo = std::numeric_limits<double>::infinity();
  hi = -lo;
  for (const Vec& p : pts) {
    const double d = p.dot(axis);
    lo = std::min(lo, d);
    hi = std::max(hi, d);
  }
  return hi - lo;
}

}  // namespace

ClosestPoints closestPoints(const ConvexShape& a, const ConvexShape& b) {
  const int d = a.dim();
  if (d != b.dim() || d < 2 || d > 3) {
    throw std::invalid_argument("closestPoints: shapes must share dimension 2 or 3");
  }

  Vec dir = a.vertices.front() - b.vertices.front();
  if (dir.squaredNorm() == 0.0) dir = Vec::Unit(d, 0);

  std::vector<SimplexVertex> simplex;
  {
    const int ia = supportIndex(a, -dir);
    const int ib = supportIndex(b, dir);
    simplex.push_back({a.vertices[ia] - b.vertices[ib], a.vertices[ia], b.vertices[ib]});
  }

  std::vector<double> bary = {1.0};
  Vec v = simplex[0].m;

  for (int iter = 0; iter < kMaxGjkIterations; ++iter) {
    SimplexResult res = closestOnSimplex(simplex);
    v = res.point;
    bary = res.bary;
    std::vector<SimplexVertex> reduced;
    reduced.reserve(res.keep.size());
    for (int idx : res.keep) reduced.push_back(simplex[idx]);
    simplex = std::move(reduced);

    const double v2 = v.squaredNorm();
    if (v2 <= kRelTolerance) break;  // intersecting or touching

    const int ia = supportIndex(a, -v);
    const int ib = supportIndex(b, v);
    const Vec wnew = a.vertices[ia] - b.vertices[ib];

    // No further progress possible: the support point does not get closer.
    if (v2 - v.dot(wnew) <= kRelTolerance * v2) break;

    bool duplicate = false;
    for (const SimplexVertex& sv : simplex) {
      if ((sv.m - wnew).squaredNorm() <= kRelTolerance * std::max(1.0, v2)) {
        duplicate = true;
        break;
      }
    }
    if (duplicate) break;

    simplex.push_back({wnew, a.vertices[ia], b.vertices[ib]});
  }

  ClosestPoints out;
  out.on_a = Vec::Zero(d);
  out.on_b = Vec::Zero(d);
  for (size_t i = 0; i < simplex.size() && i < bary.size(); ++i) {
    out.on_a += bary[i] * simplex[i].a;
    out.on_b += bary[i] * simplex[i].b;
  }
  const double dist = v.norm();
  out.distance = dist <= 1e-12 ? 0.0 : dist;
  return out;
}

double minDist(const ConvexShape& a, const ConvexShape& b) {
  return closestPoints(a, b).distance;
}

double minDist(const ConvexShape& a, const AlignedBox& b) {
  return closestPoints(a, b.corners()).distance;
}

bool intersects(const ConvexShape& a, const ConvexShape& b) {
  return minDist(a, b) <= 0.0;
}

std::vector<Vec> convexHull2d(const std::vector<Vec>& points) {
  std::vector<Vec> pts = points;
  std::sort(pts.begin(), pts.end(), [](const Vec& p, const Vec& q) {
    return p(0) < q(0) || (p(0) == q(0) && p(1) < q(1));
  });
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](const Vec& p, const Vec& q) { return p(0) == q(0) && p(1) == q(1); }),
            pts.end());
  const int n = static_cast<int>(pts.size());
  if (n < 3) return pts;

  auto cross = [](const Vec& o, const Vec& p, const Vec& q) {
    return (p(0) - o(0)) * (q(1) - o(1)) - (p(1) - o(1)) * (q(0) - o(0));
  };

  std::vector<Vec> hull(2 * n);
  int k = 0;
  for (int i = 0; i < n; ++i) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0.0) --k;
    hull[k++] = pts[i];
  }
  const int lower = k + 1;
  for (int i = n - 2; i >= 0; --i) {
    while (k >= lower && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0.0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

bool intersectsBox(const ConvexShape& shape, const AlignedBox& box) {
  const int d = shape.dim();
  if (d != box.dim()) throw std::invalid_argument("intersectsBox: dimension mismatch");
  if (d == 3) return intersects(shape, box.corners());

  // 2D separating-axis test: box axes plus the polygon's edge normals.
  const AlignedBox sb = boundsOf(shape);
  if (!sb.intersects(box)) return false;

  const std::vector<Vec> hull = convexHull2d(shape.vertices);
  const std::vector<Vec> box_pts = box.corners().vertices;
  const int n = static_cast<int>(hull.size());
  for (int i = 0; i < n; ++i) {
    const Vec& p = hull[i];
    const Vec& q = hull[(i + 1) % n];
    Vec axis(2);
    axis << -(q(1) - p(1)), q(0) - p(0);
    if (axis.squaredNorm() == 0.0) continue;
    double lo_s, hi_s, lo_b, hi_b;
    projectOntoAxis(shape.vertices, axis, lo_s, hi_s);
    projectOntoAxis(box_pts, axis, lo_b, hi_b);
    if (hi_s < lo_b || hi_b < lo_s) return false;
  }
  return true;
}

}  // namespace rlss
