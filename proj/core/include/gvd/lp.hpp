#pragma once

// Small dense linear programs in low dimension: Seidel's randomized
// incremental algorithm.  Used to find a strictly feasible interior point of
// an inequality system by maximizing the minimum slack.

#include <gvd/common.hpp>

#include <cstdint>
#include <vector>

namespace gvd {

struct LpConstraint {
  Vec a;
  double b = 0.0;  // a . x <= b
};

// Maximizes objective . x over the constraints intersected with the box
// lo <= x <= hi (componentwise).  Expected O(n) for fixed dimension.
// Throws InfeasibleError when the feasible set is empty.
Vec seidel_lp(std::vector<LpConstraint> constraints, const Vec& objective,
              const Vec& lo, const Vec& hi, std::uint64_t seed = 0);

}  // namespace gvd
