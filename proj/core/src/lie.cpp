#include <gvd/lie.hpp>

#include <cmath>

namespace gvd {

namespace {

void check_dim(const Vec& v, const char* what) {
  if (v.size() < 2) throw InvalidInputError(std::string(what) + ": dimension must be >= 2");
}

Vec normalized_or_zero(const Vec& v) {
  double n = v.norm();
  return n > 0 ? Vec(v / n) : v;
}

// sigma_{q,r} -> sigma_{q,-r}; the first two coordinates depend on r^2 only,
// so negating the last entry suffices.
Vec flip_orientation(const Vec& sigma) {
  Vec out = sigma;
  out[out.size() - 1] = -out[out.size() - 1];
  return out;
}

}  // namespace

LieVector point_to_lie(const Vec& p) {
  check_dim(p, "point_to_lie");
  require_finite(p, "point_to_lie");
  const int d = static_cast<int>(p.size());
  Vec x(d + 3);
  const double pp = p.squaredNorm();
  x[0] = 0.5 * (1.0 + pp);
  x[1] = 0.5 * (1.0 - pp);
  x.segment(2, d) = p;
  x[d + 2] = 0.0;
  return {x, LieKind::Point};
}

LieVector sphere_to_lie(const OrientedSphere& s) {
  return sphere_to_lie(s.center, s.signed_radius);
}

LieVector sphere_to_lie(const Vec& center, double signed_radius) {
  check_dim(center, "sphere_to_lie");
  require_finite(center, "sphere_to_lie");
  if (!std::isfinite(signed_radius))
    throw InvalidInputError("sphere_to_lie: non-finite radius");
  const int d = static_cast<int>(center.size());
  Vec x(d + 3);
  const double qq = center.squaredNorm();
  const double r2 = signed_radius * signed_radius;
  x[0] = 0.5 * (1.0 + qq - r2);
  x[1] = 0.5 * (1.0 - qq + r2);
  x.segment(2, d) = center;
  x[d + 2] = signed_radius;
  return {x, signed_radius == 0.0 ? LieKind::Point : LieKind::Sphere};
}

LieVector plane_to_lie(const OrientedPlane& h) {
  check_dim(h.normal, "plane_to_lie");
  require_finite(h.normal, "plane_to_lie");
  if (!std::isfinite(h.height)) throw InvalidInputError("plane_to_lie: non-finite height");
  if (std::abs(h.normal.norm() - 1.0) > 1e-12)
    throw InvalidInputError("plane_to_lie: normal must be unit length");
  const int d = static_cast<int>(h.normal.size());
  Vec x(d + 3);
  x[0] = h.height;
  x[1] = -h.height;
  x.segment(2, d) = h.normal;
  x[d + 2] = 1.0;
  return {x, LieKind::Plane};
}

double lie_product(const Vec& x, const Vec& y) {
  if (x.size() != y.size())
    throw InvalidInputError("lie_product: length mismatch");
  const auto n = x.size();
  double s = -x[0] * y[0] - x[n - 1] * y[n - 1];
  for (Eigen::Index i = 1; i + 1 < n; ++i) s += x[i] * y[i];
  return s;
}

double lie_product(const LieVector& x, const LieVector& y) {
  return lie_product(x.coords, y.coords);
}

Vec mobius_project(Vec x) {
  x[x.size() - 1] = 0.0;
  return x;
}

Vec center_of(const LieVector& x) {
  if (x.kind == LieKind::Plane)
    throw InvalidInputError("center_of: plane has no center");
  return x.coords.segment(2, x.dim());
}

double radius_of(const LieVector& x) {
  if (x.kind == LieKind::Plane)
    throw InvalidInputError("radius_of: plane has no radius");
  return x.coords[x.coords.size() - 1];
}

Vec improper_point(int d) {
  Vec x = Vec::Zero(d + 3);
  x[0] = 1.0;
  x[1] = -1.0;
  return x;
}

bool predicate(const LieVector& x, const LieVector& y, Relation rel, double eps) {
  const bool x_pt = x.kind == LieKind::Point;
  const bool x_sph = x.kind == LieKind::Sphere || x_pt;
  const bool y_sph = y.kind == LieKind::Sphere || y.kind == LieKind::Point;
  const bool y_pl = y.kind == LieKind::Plane;

  const Vec xn = normalized_or_zero(x.coords);
  const Vec yn = normalized_or_zero(y.coords);
  const double v = lie_product(xn, yn);

  switch (rel) {
    case Relation::PointIncidentSphere:
      if (!x_pt || !y_sph) break;
      return std::abs(v) <= eps;
    case Relation::PointIncidentPlane:
      if (!x_pt || !y_pl) break;
      return std::abs(v) <= eps;
    case Relation::PointInsideSphere:
      if (!x_pt || y.kind != LieKind::Sphere) break;
      return v > eps;
    case Relation::PointOutsideSphere:
      if (!x_pt || y.kind != LieKind::Sphere) break;
      return v < -eps;
    case Relation::PointInPositiveHalfspace:
      if (!x_pt || !y_pl) break;
      return v > eps;
    case Relation::SphereInPositiveHalfspace:
      if (!x_sph || !y_pl) break;
      return v > eps;
    case Relation::SphereInExterior: {
      if (!x_sph || !y_sph) break;
      Vec yf = normalized_or_zero(flip_orientation(y.coords));
      return lie_product(xn, yf) < -eps;
    }
    case Relation::MobiusNonpositive: {
      if (!x_sph || !y_sph) break;
      Vec xp = normalized_or_zero(mobius_project(x.coords));
      return lie_product(xp, yn) <= eps;
    }
    case Relation::OrientedContact:
      if (!x_sph || (!y_sph && !y_pl)) break;
      return std::abs(v) <= eps;
    case Relation::ExternallyTangent: {
      if (!x_sph || !y_sph) break;
      Vec yf = normalized_or_zero(flip_orientation(y.coords));
      return std::abs(lie_product(xn, yf)) <= eps;
    }
  }
  throw InvalidInputError("predicate: relation not defined for these kinds");
}

}  // namespace gvd
