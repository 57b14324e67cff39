#pragma once

// Conversions between Euclidean objects (points, oriented spheres, oriented
// hyperplanes) and their standard Lie coordinates in R^{d+3}, plus the Lie
// inner product and the sign predicates it supports.
//
// Standard coordinates used throughout:
//   point p            -> ((1+p.p)/2, (1-p.p)/2, p, 0)
//   sphere S(q,r)      -> ((1+q.q-r^2)/2, (1-q.q+r^2)/2, q, r)
//   plane H_{n,h}      -> (h, -h, n, 1)
// All vectors are kept de-homogenized; projective rescaling is never
// materialized.

#include <gvd/common.hpp>

namespace gvd {

struct OrientedSphere {
  Vec center;
  double signed_radius = 0.0;  // > 0: inward normal, < 0: outward, 0: point
};

struct OrientedPlane {
  Vec normal;  // unit length
  double height = 0.0;
};

enum class LieKind { Point, Sphere, Plane };

struct LieVector {
  Vec coords;  // length d+3
  LieKind kind = LieKind::Point;

  int dim() const { return static_cast<int>(coords.size()) - 3; }
};

LieVector point_to_lie(const Vec& p);
LieVector sphere_to_lie(const OrientedSphere& s);
LieVector sphere_to_lie(const Vec& center, double signed_radius);
LieVector plane_to_lie(const OrientedPlane& h);

// Signature (-,+,...,+,-) inner product on R^{d+3}.
double lie_product(const Vec& x, const Vec& y);
double lie_product(const LieVector& x, const LieVector& y);

// Orthogonal projection to the coordinate plane x_{d+3} = 0.
Vec mobius_project(Vec x);

// Inverse maps, defined for point/sphere kinds only (x_1 + x_2 = 1).
Vec center_of(const LieVector& x);
double radius_of(const LieVector& x);

// Named constant (1, -1, 0, ..., 0): the point at infinity.  Constructors
// never produce it; it exists for tests and for documenting the boundary of
// the coordinate chart.
Vec improper_point(int d);

// Sign conditions on pairs of Lie spheres.  Numbering follows the order in
// which the relations are introduced: incidence, inclusion, Mobius product,
// tangency.
enum class Relation {
  PointIncidentSphere,     // <xi, sigma> = 0
  PointIncidentPlane,      // <xi, pi> = 0
  PointInsideSphere,       // <xi, sigma> > 0
  PointOutsideSphere,      // <xi, sigma> < 0
  PointInPositiveHalfspace,  // <xi, pi> > 0
  SphereInPositiveHalfspace, // <sigma, pi> > 0
  SphereInExterior,        // <sigma_1, flip(sigma_2)> < 0
  MobiusNonpositive,       // <mobius_project(sigma_1), sigma_2> <= 0
  OrientedContact,         // <sigma_1, sigma_2> = 0 (spheres or sphere/plane)
  ExternallyTangent        // <sigma_1, flip(sigma_2)> = 0
};

// Evaluates the relation with tolerance eps, applied after normalizing both
// coordinate vectors to unit Euclidean norm.  Throws InvalidInputError for a
// kind/relation combination the tables do not define.
bool predicate(const LieVector& x, const LieVector& y, Relation rel,
               double eps = kPredTol);

}  // namespace gvd
