#pragma once

#include "rlss/geometry/types.hpp"

namespace rlss {

struct ClosestPoints {
  double distance = 0.0;
  Vec on_a;
  Vec on_b;
};

/// Closest points between the convex hulls of two vertex sets (GJK).
/// distance is 0 when the hulls intersect or touch.
ClosestPoints closestPoints(const ConvexShape& a, const ConvexShape& b);

/// Euclidean hull-to-hull distance; 0 if the hulls intersect or touch.
double minDist(const ConvexShape& a, const ConvexShape& b);
double minDist(const ConvexShape& a, const AlignedBox& b);

/// Hull-hull intersection test (touching counts as intersecting).
bool intersects(const ConvexShape& a, const ConvexShape& b);

/// Shape-box intersection: separating-axis test in 2D, GJK in 3D.
bool intersectsBox(const ConvexShape& shape, const AlignedBox& box);

/// CCW-ordered hull of a 2D point cloud (monotone chain). Collinear interior
/// points are dropped; a degenerate cloud yields fewer than 3 points.
std::vector<Vec> convexHull2d(const std::vector<Vec>& points);

}  // namespace rlss
