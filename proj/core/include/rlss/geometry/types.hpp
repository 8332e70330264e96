#pragma once

#include <Eigen/Dense>

#include <vector>

namespace rlss {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Convex set represented as the convex hull of an explicit vertex list.
/// Vertices need not be ordered and may contain interior points; all set
/// operations interpret the shape as the hull of the listed points.
struct ConvexShape {
  std::vector<Vec> vertices;

  ConvexShape() = default;
  explicit ConvexShape(std::vector<Vec> verts);

  int dim() const { return vertices.empty() ? 0 : static_cast<int>(vertices.front().size()); }

  /// Axis-aligned box centered at the origin with the given half extents.
  static ConvexShape box(const Vec& half_extents);
};

/// Oriented hyperplane {x : normal·x + offset = 0} with unit normal.
/// Points with normal·x + offset <= 0 are on the negative side.
struct Hyperplane {
  Vec normal;
  double offset = 0.0;

  Hyperplane() = default;
  Hyperplane(Vec n, double a);

  double signedDistance(const Vec& x) const { return normal.dot(x) + offset; }
};

/// Intersection of half-spaces; x is inside iff normal·x + offset <= 0 for
/// every halfspace. May be unbounded.
struct HPolytope {
  std::vector<Hyperplane> halfspaces;

  bool contains(const Vec& x, double tol = 1e-12) const;
};

struct AlignedBox {
  Vec min;
  Vec max;

  AlignedBox() = default;
  AlignedBox(Vec mn, Vec mx);

  int dim() const { return static_cast<int>(min.size()); }
  Vec center() const { return 0.5 * (min + max); }
  bool contains(const Vec& x) const;
  bool intersects(const AlignedBox& other) const;
  AlignedBox inflated(double margin) const;
  ConvexShape corners() const;
};

/// Minkowski sum of the base shape with the point p: every vertex shifted by p.
ConvexShape placeShape(const ConvexShape& base, const Vec& p);

/// Convex hull of the base shape placed at a and at b. By convexity of sweeps
/// of a convex shape along a segment, this equals the swept region exactly.
ConvexShape sweptHull(const ConvexShape& base, const Vec& a, const Vec& b);

AlignedBox boundsOf(const ConvexShape& shape);

}  // namespace rlss
