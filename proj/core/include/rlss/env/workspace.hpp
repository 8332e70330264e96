#pragma once

#include "rlss/env/obstacle_index.hpp"
#include "rlss/geometry/types.hpp"

namespace rlss {

/// Convex workspace polytope the robot must stay inside, with an axis-aligned
/// bounding box used to bound the discrete search grid.
struct Workspace {
  HPolytope polytope;
  AlignedBox bounds;

  Workspace() = default;
  Workspace(HPolytope poly, AlignedBox box);

  static Workspace fromBox(const AlignedBox& box);

  bool containsShape(const ConvexShape& shape, double tol = 1e-12) const;

  /// Distance from the shape to the workspace boundary: 0 when the shape is
  /// not fully inside, otherwise the smallest clearance to any face.
  double boundaryClearance(const ConvexShape& shape) const;
};

/// True iff the region hull is inside the workspace, intersects no obstacle
/// box, and intersects no robot shape (touching counts as intersecting).
bool regionFree(const ObstacleIndex& obstacles, const Workspace& ws,
                const std::vector<ConvexShape>& robots, const ConvexShape& region);

}  // namespace rlss
