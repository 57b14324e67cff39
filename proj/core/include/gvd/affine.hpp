#pragma once

// Minimization diagrams of quadratic distance-like families.  Each function
// f(x) = a ||x - q||^2 + b . x + c factors through the point-sphere embedding
// as a linear functional on R^{d+3}, so minimization regions become polytopes
// in the slice and the diagram is read off by intersecting their faces with
// the paraboloid.  Order-k diagrams reduce to the same machinery on k-fold
// sums.

#include <gvd/hull.hpp>
#include <gvd/quadric.hpp>

#include <cstdint>
#include <vector>

namespace gvd {

struct QuadraticFunction {
  double a = 0.0;
  Vec q;  // length d
  Vec b;  // length d
  double c = 0.0;

  int dimension() const { return static_cast<int>(q.size()); }
  double eval(const Vec& x) const { return a * (x - q).squaredNorm() + b.dot(x) + c; }
};

// L(y) = <y, avec> (Lie product) with avec_{d+3} = 0.
struct LinearFunctional {
  Vec avec;  // length d+3
};

// f(x) = <phi(x), avec> for all x.
LinearFunctional quadratic_to_functional(const QuadraticFunction& f);

// Point-sphere embedding ((1+x.x)/2, (1-x.x)/2, x, 0); same formula as
// point_to_lie, exposed in raw coordinates.
Vec phi(const Vec& x);

// All C(m,k) index-sorted k-fold sums, expanded back to the same parametric
// shape.  index_sets (optional) receives the defining index set per output
// function, in output order.
std::vector<QuadraticFunction> order_k_family(const std::vector<QuadraticFunction>& fs,
                                              int k,
                                              std::vector<std::vector<int>>* index_sets = nullptr);

// Box for a function family: B = margin * max over the family of ||q||_inf,
// clamped below at 1.
BoundingBox choose_bounding_box(const std::vector<QuadraticFunction>& fs, double margin = 4.0);

struct MdVertex {
  Vec point;                     // in R^d
  std::vector<int> min_indices;  // family indices agreeing at the minimum
};

struct MdEdge {
  int v0 = kBoxBoundary;
  int v1 = kBoxBoundary;
  std::vector<int> pair;    // the two family indices tied along the edge
  std::vector<Vec> polyline;
  bool closed = false;
};

struct MdCell {
  int function_index = -1;  // index into the (possibly order-k) family
  Vec representative;
};

struct MinimizationDiagram {
  int dimension = 2;
  int order_k = 1;
  std::vector<std::vector<int>> index_sets;  // family index -> original indices
  std::vector<MdVertex> vertices;
  std::vector<MdEdge> edges;
  std::vector<MdCell> cells;
};

// Lower-envelope diagram of the family over the box; cells are enumerated by
// a coarse scan, vertices and edges come from the per-cell polytopes.
MinimizationDiagram minimization_diagram(const std::vector<QuadraticFunction>& fs,
                                         const BoundingBox& box, std::uint64_t seed = 0);

// Diagram of the k-fold sums with index_sets mapping labels back; cells of
// this diagram are labeled by the set of k smallest original functions.
MinimizationDiagram order_k_diagram(const std::vector<QuadraticFunction>& fs, int k,
                                    const BoundingBox& box, std::uint64_t seed = 0);

}  // namespace gvd
