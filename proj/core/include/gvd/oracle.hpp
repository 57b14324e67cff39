#pragma once

// Brute-force ground truth, independent of the hull/quadric pipeline: the
// admissible radius interval at a point evaluated in closed form, activity
// labels, argmin labels for function families, and a quadratic-time Delaunay
// vertex enumeration for d = 2.

#include <gvd/affine.hpp>
#include <gvd/dataset.hpp>

#include <array>
#include <optional>
#include <vector>

namespace gvd {

struct RadiusInterval {
  double lo = 0.0;  // max over lower bounds and 0
  double hi = 0.0;  // min over upper bounds; +inf when unconstrained
  bool feasible = false;
};

// Admissible radii r of spheres S(x, r): r <= min ||x-p|| over outside
// points, r >= max ||x-p|| over inside points, r <= n.x - h per half-space,
// r^2 <= ||x-q||^2 - t^2 per power sphere, r <= ||x-q|| - t per exterior
// sphere.
RadiusInterval admissible_radius_interval(const Vec& x, const DataSet& ds);

// Largest admissible radius; empty when no sphere centered at x is
// admissible, +inf when unbounded above.
std::optional<double> oracle_max_radius(const Vec& x, const DataSet& ds);

// Site ids whose constraint is active at either end of the admissible radius
// interval; empty when x is outside the diagram's domain.
std::vector<int> oracle_label(const Vec& x, const DataSet& ds, double eps = kPredTol);

// Argmin index set of the family at x, at relative tolerance rel_tol.
std::vector<int> oracle_label_md(const Vec& x, const std::vector<QuadraticFunction>& fs,
                                 double rel_tol = 1e-9);

struct CircumcircleEntry {
  Vec center;
  double radius = 0.0;
  std::array<int, 3> triple{};
};

// d = 2 only: circumcenters of all point triples whose circumcircle has no
// input point strictly inside.  Collinear triples are skipped.
std::vector<CircumcircleEntry> delaunay_vertices_bruteforce(const std::vector<Vec>& points);

}  // namespace gvd
