#pragma once

#include "rlss/geometry/types.hpp"

#include <vector>

namespace rlss {

/// Immutable store of axis-aligned obstacle boxes with a bounding-volume
/// tree for broadphase queries. Query results are exact: the tree only
/// prunes, candidates are filtered with exact geometric tests.
class ObstacleIndex {
 public:
  ObstacleIndex() = default;
  ObstacleIndex(std::vector<AlignedBox> boxes, double resolution);

  const std::vector<AlignedBox>& boxes() const { return boxes_; }
  double resolution() const { return resolution_; }
  bool empty() const { return boxes_.empty(); }
  int dim() const { return boxes_.empty() ? 0 : boxes_.front().dim(); }

  /// Indices of boxes whose AABB intersects the query box.
  std::vector<int> queryBox(const AlignedBox& region) const;

  /// All boxes whose hull distance to the region is <= margin.
  std::vector<AlignedBox> obstaclesNear(const ConvexShape& region, double margin) const;

  /// Minimum distance from the region to any box within cutoff, or +inf if
  /// every box is farther than cutoff.
  double minDistanceWithin(const ConvexShape& region, double cutoff) const;

  /// True iff some box intersects the region (touching included).
  bool intersectsAny(const ConvexShape& region) const;

 private:
  struct Node {
    AlignedBox bounds;
    int left = -1;
    int right = -1;
    int begin = 0;
    int end = 0;  // leaf covers order_[begin, end)
  };

  int build(int begin, int end);
  template <typename Visitor>
  void visit(const AlignedBox& region, Visitor&& visitor) const;

  std::vector<AlignedBox> boxes_;
  std::vector<int> order_;
  std::vector<Node> nodes_;
  int root_ = -1;
  double resolution_ = 0.0;
};

}  // namespace rlss
