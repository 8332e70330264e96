#include "rlss/env/obstacle_index.hpp"

#include "rlss/geometry/distance.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace rlss {

namespace {
constexpr int kLeafSize = 4;

AlignedBox merge(const AlignedBox& a, const AlignedBox& b) {
  return AlignedBox(a.min.cwiseMin(b.min), a.max.cwiseMax(b.max));
}
}  // namespace

ObstacleIndex::ObstacleIndex(std::vector<AlignedBox> boxes, double resolution)
    : boxes_(std::move(boxes)), resolution_(resolution) {
  if (!(resolution_ > 0.0)) {
    throw std::invalid_argument("ObstacleIndex: resolution must be positive");
  }
  for (const AlignedBox& b : boxes_) {
    if (!boxes_.empty() && b.dim() != boxes_.front().dim()) {
      throw std::invalid_argument("ObstacleIndex: inconsistent box dimensions");
    }
  }
  if (boxes_.empty()) return;
  order_.resize(boxes_.size());
  std::iota(order_.begin(), order_.end(), 0);
  nodes_.reserve(2 * boxes_.size());
  root_ = build(0, static_cast<int>(boxes_.size()));
}

int ObstacleIndex::build(int begin, int end) {
  Node node;
  node.bounds = boxes_[order_[begin]];
  for (int i = begin + 1; i < end; ++i) {
    node.bounds = merge(node.bounds, boxes_[order_[i]]);
  }
  node.begin = begin;
  node.end = end;

  const int idx = static_cast<int>(nodes_.size());
  nodes_.push_back(node);
  if (end - begin <= kLeafSize) return idx;

  // Split at the centroid median along the widest axis; ties broken by
  // original index for deterministic builds.
  const Vec extent = node.bounds.max - node.bounds.min;
  int axis = 0;
  extent.maxCoeff(&axis);
  const int mid = (begin + end) / 2;
  std::nth_element(order_.begin() + begin, order_.begin() + mid, order_.begin() + end,
                   [&](int a, int b) {
                     const double ca = boxes_[a].center()(axis);
                     const double cb = boxes_[b].center()(axis);
                     return ca < cb || (ca == cb && a < b);
                   });
  const int left = build(begin, mid);
  const int right = build(mid, end);
  nodes_[idx].left = left;
  nodes_[idx].right = right;
  return idx;
}

template <typename Visitor>
void ObstacleIndex::visit(const AlignedBox& region, Visitor&& visitor) const {
  if (root_ < 0) return;
  std::vector<int> stack = {root_};
  while (!stack.empty()) {
    const Node& node = nodes_[stack.back()];
    stack.pop_back();
    if (!node.bounds.intersects(region)) continue;
    if (node.left < 0) {
      for (int i = node.begin; i < node.end; ++i) {
        if (boxes_[order_[i]].intersects(region)) visitor(order_[i]);
      }
    } else {
      stack.push_back(node.left);
      stack.push_back(node.right);
    }
  }
}

std::vector<int> ObstacleIndex::queryBox(const AlignedBox& region) const {
  std::vector<int> out;
  visit(region, [&](int i) { out.push_back(i); });
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<AlignedBox> ObstacleIndex::obstaclesNear(const ConvexShape& region,
                                                     double margin) const {
  if (margin < 0.0) throw std::invalid_argument("obstaclesNear: margin must be >= 0");
  std::vector<AlignedBox> out;
  if (boxes_.empty()) return out;
  const AlignedBox query = boundsOf(region).inflated(margin);
  for (int i : queryBox(query)) {
    if (minDist(region, boxes_[i]) <= margin) out.push_back(boxes_[i]);
  }
  return out;
}

double ObstacleIndex::minDistanceWithin(const ConvexShape& region, double cutoff) const {
  double best = std::numeric_limits<double>::infinity();
  if (boxes_.empty()) return best;
  const AlignedBox query = boundsOf(region).inflated(cutoff);
  for (int i : queryBox(query)) {
    best = std::min(best, minDist(region, boxes_[i]));
  }
  return best;
}

bool ObstacleIndex::intersectsAny(const ConvexShape& region) const {
  if (boxes_.empty()) return false;
  const AlignedBox query = boundsOf(region);
  bool hit = false;
  visit(query, [&](int i) {
    if (!hit && intersectsBox(region, boxes_[i])) hit = true;
  });
  return hit;
}

}  // namespace rlss
