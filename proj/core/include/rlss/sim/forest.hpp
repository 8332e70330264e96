#pragma once

#include "rlss/geometry/types.hpp"

#include <cstdint>
#include <vector>

namespace rlss::sim {

struct ForestSpec {
  double radius = 7.5;       // forest disk radius (meters)
  double occupancy = 0.10;   // occupied area fraction of the disk
  double tree_radius = 0.5;  // cylinder radius
  double resolution = 0.5;   // voxel edge length
  int dim = 2;               // 2: footprint boxes only; 3: extruded columns
  double height = 1.5;       // column height when dim == 3
};

/// Rejection-samples non-overlapping cylinders inside the disk until the
/// occupied-area fraction (counted analytically; the trees are disjoint)
/// crosses the target, then voxelizes each footprint into resolution-sized
/// boxes (outer cover). Deterministic per seed.
/// Throws std::runtime_error after 1e6 consecutive rejections.
std::vector<AlignedBox> generateForest(const ForestSpec& spec, uint64_t seed);

}  // namespace rlss::sim
