#pragma once

// Bounded-polytope construction from the inequality system: slice
// normalization, feasible interior point, halfspace intersection via a dual
// convex hull in general dimension, and extraction of the face structure
// down to 1-faces.

#include <gvd/dataset.hpp>

#include <cstdint>
#include <optional>
#include <vector>

namespace gvd {

struct BoundingBox {
  double B = 1.0;  // half-width for center coordinates and radius
};

// B = margin * max over sites of (|center|_inf + |radius| + |height|),
// clamped below at 1.
BoundingBox choose_bounding_box(const DataSet& ds, double margin = 4.0);

// One inequality a . y <= b in the reduced slice coordinates
// y = (sigma_1, sigma_3, ..., sigma_{d+3}).
struct ReducedInequality {
  Vec a;
  double b = 0.0;
  IneqTag tag = IneqTag::Site;
  int site_id = -1;

  double slack(const Vec& y) const { return b - a.dot(y); }
};

struct ReducedSystem {
  int d = 2;           // Euclidean dimension
  int ambient_dim = 4; // d + 2 after eliminating sigma_2
  std::vector<ReducedInequality> rows;

  // Affine lift back to R^{d+3} (inserts sigma_2 = 1 - sigma_1).
  Vec lift(const Vec& y) const;
  Vec reduce(const Vec& sigma) const;
};

// Substitutes sigma_2 = 1 - sigma_1.  When sigma1_bound > 0, two extra
// BoundingBox-tagged rows |sigma_1| <= sigma1_bound are appended; the other
// box rows leave sigma_1 unconstrained and the polytope must be bounded for
// the dual hull transform.
ReducedSystem normalize_slice(const std::vector<LinearInequality>& ineqs, int d,
                              double sigma1_bound = 0.0);

// Bound on |sigma_1| implied by centers and radii inside the box.
double sigma1_bound_for_box(int d, double B);

struct FeasiblePoint {
  Vec point;
  double slack = 0.0;  // minimum (row-normalized) slack at point
};

// Max-min-slack linear program over the system.  Throws InfeasibleError when
// the maximum slack is <= kFeasTol ("Sph(D) is empty").
FeasiblePoint feasible_point(const ReducedSystem& sys, std::uint64_t seed = 0);

// --- general-dimension convex hull (dual step of the intersection) ---

struct HullFacet {
  std::vector<int> points;  // indices of the defining input points (simplicial)
  Vec normal;               // unit outward normal
  double offset = 0.0;      // normal . y = offset on the facet
};

struct ConvexHull {
  std::vector<HullFacet> facets;
  std::vector<std::pair<int, int>> ridges;  // adjacent facet index pairs
};

// Randomized incremental convex hull of points in R^m, m >= 2.  Facets are
// simplicial; near-ties in the visibility predicate fall back to exact
// rational arithmetic.  Throws DegenerateInputError when the points are
// affinely dependent.
ConvexHull convex_hull(const std::vector<Vec>& points, std::uint64_t seed = 0);

struct Polytope {
  int ambient_dim = 0;
  std::vector<Vec> vertices;
  std::vector<std::vector<int>> vertex_support;  // sorted row indices, tight at vertex

  struct Edge {
    int v0 = -1, v1 = -1;
    std::vector<int> support;  // sorted row indices tight along the edge
  };
  std::vector<Edge> edges;

  // Vertex ids tight on a given row.
  std::vector<int> facet_vertices(int row) const;
};

// Intersects the halfspaces of the system around a strictly feasible interior
// point by dualizing to a convex hull problem.
Polytope halfspace_intersection(const ReducedSystem& sys, const Vec& interior,
                                std::uint64_t seed = 0);

// 1-faces whose support contains at most one BoundingBox/RadiusSign row.
std::vector<Polytope::Edge> diagram_edges(const Polytope& p, const ReducedSystem& sys);

}  // namespace gvd
