#pragma once

#include "rlss/geometry/distance.hpp"
#include "rlss/geometry/types.hpp"

#include <optional>

namespace rlss {

/// Maximum-margin separating hyperplane between the convex hulls of two
/// vertex sets. The returned hyperplane has a unit normal and sits at the
/// margin midpoint; a is on the negative side, b on the positive side, each
/// at signed distance >= m where m > 0 is half the hull-to-hull distance.
///
/// Solved as the standard hard-margin SVM QP over the vertex sets, with an
/// exact geometric construction (closest points between hulls, bisector) as
/// fallback when the QP solve does not succeed.
///
/// Returns nullopt when the hulls intersect or touch (margin below 1e-9).
std::optional<Hyperplane> hardMarginSvm(const ConvexShape& a, const ConvexShape& b);

/// Shifts h so that a position point on the negative side of the result
/// guarantees the whole base shape placed there is on the negative side of h:
/// offset becomes h.offset + max over base vertices of normal·v.
Hyperplane bufferHyperplane(const Hyperplane& h, const ConvexShape& base);

/// Retreats the negative side by dist along the normal (offset += dist).
Hyperplane shiftHyperplane(const Hyperplane& h, double dist);

}  // namespace rlss
