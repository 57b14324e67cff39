#pragma once

// Intersection of polytope faces with the Lie quadric in the reduced slice,
// projection of the roots back to centers in R^d, and assembly of the labeled
// generalized diagram: vertices from 1-faces, sampled edge curves from
// 2-faces.  The quadratic-form helpers are shared with the minimization
// diagram engine, which intersects with the point-sphere paraboloid instead.

#include <gvd/hull.hpp>

#include <cstdint>
#include <functional>
#include <map>
#include <vector>

namespace gvd {

// y^T Q y + l . y + c on reduced coordinates.
struct QuadraticForm {
  Mat Q;
  Vec l;
  double c = 0.0;

  double eval(const Vec& y) const { return y.dot(Q * y) + l.dot(y) + c; }
  Vec grad(const Vec& y) const { return 2.0 * (Q * y) + l; }
};

// <lift(y), lift(y)> on the slice sigma_2 = 1 - sigma_1, in coordinates
// y = (sigma_1, x_1..x_d, r): q(y) = 1 - 2 y_0 + sum x_i^2 - r^2.
QuadraticForm slice_quadric_form(int d);

// Point-sphere restriction (r = 0 eliminated), coordinates y = (s_1, x):
// q(y) = 1 - 2 y_0 + sum x_i^2.  Convex; its zero set is the paraboloid
// parametrizing point spheres.
QuadraticForm paraboloid_form(int d);

double slice_quadric(const Vec& y, int d);
Vec slice_quadric_grad(const Vec& y, int d);

// Roots of q((1-t) v0 + t v1) = 0 in [-1e-10, 1 + 1e-10], deduplicated at
// 1e-9; the near-linear case |leading coeff| <= 1e-14 * scale is handled.
// When the whole segment lies on the quadric, returns {0, 1}.
std::vector<double> quadratic_segment_roots(const QuadraticForm& qf, const Vec& v0,
                                            const Vec& v1);
std::vector<double> edge_quadric_roots(const Vec& v0, const Vec& v1, int d);

// Newton polish against the equalities of the given tight rows plus the
// quadric.
Vec polish_quadric_root(const QuadraticForm& qf, const ReducedSystem& sys,
                        const std::vector<int>& rows, Vec y);

// 2-face keys: (ambient_dim - 2)-subsets of Site-tagged rows appearing in
// some 1-face support, each mapped to the incident polytope vertex ids.
std::map<std::vector<int>, std::vector<int>> two_face_keys(const Polytope& p,
                                                           const ReducedSystem& sys);

// Plane chart of one 2-face with its clipping constraints.
struct FaceChart {
  Vec y0;  // point on the face plane
  Mat U;   // ambient x 2 orthonormal basis of the plane directions
  std::vector<Eigen::Vector2d> alpha;
  std::vector<double> beta;
  double R = 1.0;  // chart radius covering the face polygon

  Vec embed(const Eigen::Vector2d& z) const { return y0 + U * z; }
  bool inside(const Eigen::Vector2d& z) const;
  double margin(const Eigen::Vector2d& z) const;
};

// False when the key rows do not cut a 2-plane or the face is empty.
bool build_face_chart(const ReducedSystem& sys, const std::vector<int>& key,
                      const std::vector<int>& face_vertex_ids, const Polytope& p,
                      FaceChart& chart);

struct FaceCurve {
  std::vector<Vec> points;  // reduced coordinates, on the quadric
  bool closed = false;
};

// Quadric intersection curves on the face, clipped to the face polygon;
// parametrizes the conic exactly and samples at spatial step delta.
std::vector<FaceCurve> quadric_face_curves(const QuadraticForm& qf, const FaceChart& chart,
                                           double delta);

struct DiagramVertex {
  Vec center;                    // in R^d
  double radius = 0.0;
  std::vector<int> tight_sites;  // sorted site ids
  Vec lie_coords;                // length d+3, on the quadric
};

inline constexpr int kBoxBoundary = -1;  // edge endpoint on the bounding box

struct DiagramEdge {
  int v0 = kBoxBoundary;
  int v1 = kBoxBoundary;
  std::vector<int> defining_sites;  // sorted site ids tight along the edge
  std::vector<Vec> polyline;        // sampled centers in R^d
  bool closed = false;              // curve is a loop; v0/v1 meaningless
};

struct GeneralizedDiagram {
  int dimension = 2;
  std::vector<DiagramVertex> vertices;
  std::vector<DiagramEdge> edges;
  DataSet sites;
  BoundingBox box;
};

// Reads vertices off quadric roots of site-supported 1-faces and edge curves
// off 2-faces whose tight set consists of site rows only.
GeneralizedDiagram build_diagram(const Polytope& p, const ReducedSystem& sys,
                                 const DataSet& ds, const BoundingBox& box);

struct ComputeOptions {
  double margin = 4.0;
  std::uint64_t seed = 0;
  double eps = kPredTol;
};

// Full pipeline: bounding box, inequality assembly, slice, interior point,
// halfspace intersection, quadric intersection.  Throws InfeasibleError when
// the admissible sphere family is empty.
GeneralizedDiagram compute_diagram(const DataSet& ds, const ComputeOptions& opts = {});

// Site ids active at the extremal admissible spheres centered at x; empty
// when no admissible sphere is centered there.
std::vector<int> locate(const Vec& x, const DataSet& ds, double eps = kPredTol);

}  // namespace gvd
