#include "rlss/env/workspace.hpp"

#include "rlss/geometry/distance.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace rlss {

Workspace::Workspace(HPolytope poly, AlignedBox box)
    : polytope(std::move(poly)), bounds(std::move(box)) {}

Workspace Workspace::fromBox(const AlignedBox& box) {
  HPolytope poly;
  const int d = box.dim();
  for (int k = 0; k < d; ++k) {
    Vec n = Vec::Zero(d);
    n(k) = 1.0;
    poly.halfspaces.emplace_back(n, -box.max(k));
    poly.halfspaces.emplace_back(-n, box.min(k));
  }
  return Workspace(std::move(poly), box);
}

bool Workspace::containsShape(const ConvexShape& shape, double tol) const {
  for (const Vec& v : shape.vertices) {
    if (!polytope.contains(v, tol)) return false;
  }
  return true;
}

double Workspace::boundaryClearance(const ConvexShape& shape) const {
  double clearance = std::numeric_limits<double>::infinity();
  for (const Hyperplane& h : polytope.halfspaces) {
    double worst = -std::numeric_limits<double>::infinity();
    for (const Vec& v : shape.vertices) {
      worst = std::max(worst, h.signedDistance(v));
    }
    clearance = std::min(clearance, -worst);
  }
  return std::max(clearance, 0.0);
}

bool regionFree(const ObstacleIndex& obstacles, const Workspace& ws,
                const std::vector<ConvexShape>& robots, const ConvexShape& region) {
  if (!ws.containsShape(region)) return false;
  if (obstacles.intersectsAny(region)) return false;
  for (const ConvexShape& robot : robots) {
    if (intersects(region, robot)) return false;
  }
  return true;
}

}  // namespace rlss
