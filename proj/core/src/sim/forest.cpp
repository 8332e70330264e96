#include "rlss/sim/forest.hpp"

#include "rlss/sim/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace rlss::sim {

std::vector<AlignedBox> generateForest(const ForestSpec& spec, uint64_t seed) {
  if (!(spec.occupancy > 0.0 && spec.occupancy < 1.0)) {
    throw std::invalid_argument("generateForest: occupancy must be in (0, 1)");
  }
  if (!(spec.radius > spec.tree_radius) || !(spec.resolution > 0.0)) {
    throw std::invalid_argument("generateForest: invalid geometry");
  }
  if (spec.dim != 2 && spec.dim != 3) {
    throw std::invalid_argument("generateForest: dim must be 2 or 3");
  }

  Rng rng(seed);
  const double rho = spec.tree_radius;
  const double disk_area = std::numbers::pi * spec.radius * spec.radius;
  const double tree_area = std::numbers::pi * rho * rho;
  const double placement_radius = spec.radius - rho;

  std::vector<Vec> centers;
  double fraction = 0.0;
  int rejections = 0;
  while (fraction < spec.occupancy) {
    // Uniform sample in the placement disk.
    const double r = placement_radius * std::sqrt(rng.uniform());
    const double phi = 2.0 * std::numbers::pi * rng.uniform();
    Vec c(2);
    c << r * std::cos(phi), r * std::sin(phi);

    bool overlaps = false;
    for (const Vec& other : centers) {
      if ((c - other).norm() < 2.0 * rho) {
        overlaps = true;
        break;
      }
    }
    if (overlaps) {
      if (++rejections > 1000000) {
        throw std::runtime_error("generateForest: placement failure (1e6 rejections)");
      }
      continue;
    }
    rejections = 0;
    centers.push_back(std::move(c));
    fraction = static_cast<double>(centers.size()) * tree_area / disk_area;
  }

  // Outer-cover voxelization of each footprint disk.
  const double res = spec.resolution;
  std::vector<AlignedBox> boxes;
  const int levels = spec.dim == 3 ? std::max(1, static_cast<int>(std::ceil(spec.height / res))) : 1;
  for (const Vec& c : centers) {
    const int ix_lo = static_cast<int>(std::floor((c(0) - rho) / res));
    const int ix_hi = static_cast<int>(std::floor((c(0) + rho) / res));
    const int iy_lo = static_cast<int>(std::floor((c(1) - rho) / res));
    const int iy_hi = static_cast<int>(std::floor((c(1) + rho) / res));
    for (int ix = ix_lo; ix <= ix_hi; ++ix) {
      for (int iy = iy_lo; iy <= iy_hi; ++iy) {
        // Closest point of the cell to the center decides intersection.
        const double cx = std::clamp(c(0), ix * res, (ix + 1) * res);
        const double cy = std::clamp(c(1), iy * res, (iy + 1) * res);
        const double dx = cx - c(0);
        const double dy = cy - c(1);
        if (dx * dx + dy * dy > rho * rho) continue;
        for (int iz = 0; iz < levels; ++iz) {
          Vec lo(spec.dim), hi(spec.dim);
          lo(0) = ix * res;
          lo(1) = iy * res;
          hi(0) = (ix + 1) * res;
          hi(1) = (iy + 1) * res;
          if (spec.dim == 3) {
            lo(2) = iz * res;
            hi(2) = (iz + 1) * res;
          }
          boxes.emplace_back(std::move(lo), std::move(hi));
        }
      }
    }
  }
  return boxes;
}

}  // namespace rlss::sim
