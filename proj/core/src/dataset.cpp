#include <gvd/dataset.hpp>

#include <cmath>

namespace gvd {

namespace {

struct DimVisitor {
  int operator()(const PointOutsideSite& s) const { return static_cast<int>(s.point.size()); }
  int operator()(const PointInsideSite& s) const { return static_cast<int>(s.point.size()); }
  int operator()(const HalfSpaceSite& s) const { return static_cast<int>(s.plane.normal.size()); }
  int operator()(const PowerSphereSite& s) const { return static_cast<int>(s.center.size()); }
  int operator()(const ExteriorSphereSite& s) const { return static_cast<int>(s.center.size()); }
};

}  // namespace

int Site::dimension() const { return std::visit(DimVisitor{}, shape); }

void Site::validate() const {
  std::visit(
      [](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, PointOutsideSite> || std::is_same_v<T, PointInsideSite>) {
          require_finite(s.point, "site point");
        } else if constexpr (std::is_same_v<T, HalfSpaceSite>) {
          require_finite(s.plane.normal, "site normal");
          if (std::abs(s.plane.normal.norm() - 1.0) > 1e-12)
            throw InvalidInputError("half-space site: normal must be unit length");
          if (!std::isfinite(s.plane.height))
            throw InvalidInputError("half-space site: non-finite height");
        } else {
          require_finite(s.center, "site center");
          if (!(s.radius > 0.0) || !std::isfinite(s.radius))
            throw InvalidInputError("sphere site: radius must be > 0");
        }
      },
      shape);
}

void DataSet::validate() const {
  if (dimension < 2) throw InvalidInputError("data set: dimension must be >= 2");
  if (sites.size() < 2) throw InvalidInputError("data set: at least 2 sites required");
  for (const auto& s : sites) {
    s.validate();
    if (s.dimension() != dimension)
      throw InvalidInputError("data set: site dimension mismatch");
  }
}

Vec fold_functional(const Vec& a) {
  Vec c = a;
  c[0] = -c[0];
  c[c.size() - 1] = -c[c.size() - 1];
  return c;
}

LinearInequality inequality_for_site(const Site& s) {
  s.validate();
  LinearInequality out;
  out.tag = IneqTag::Site;
  out.site_id = s.id;
  std::visit(
      [&](const auto& site) {
        using T = std::decay_t<decltype(site)>;
        if constexpr (std::is_same_v<T, PointOutsideSite>) {
          out.coeffs = fold_functional(point_to_lie(site.point).coords);
        } else if constexpr (std::is_same_v<T, PointInsideSite>) {
          // <sigma, xi_p> >= 0, stored negated.
          out.coeffs = -fold_functional(point_to_lie(site.point).coords);
        } else if constexpr (std::is_same_v<T, HalfSpaceSite>) {
          // <sigma, pi_{n,h}> = n.x - h - r must be >= 0, stored negated.
          out.coeffs = -fold_functional(plane_to_lie(site.plane).coords);
        } else if constexpr (std::is_same_v<T, PowerSphereSite>) {
          out.coeffs = fold_functional(
              mobius_project(sphere_to_lie(site.center, site.radius).coords));
        } else {
          out.coeffs = fold_functional(sphere_to_lie(site.center, -site.radius).coords);
        }
      },
      s.shape);
  return out;
}

std::vector<LinearInequality> assemble_system(const DataSet& ds, double box_halfwidth) {
  ds.validate();
  if (!(box_halfwidth > 0.0))
    throw InvalidInputError("assemble_system: box half-width must be > 0");
  const int d = ds.dimension;
  std::vector<LinearInequality> out;
  out.reserve(ds.sites.size() + 2 * d + 2);
  for (const auto& s : ds.sites) out.push_back(inequality_for_site(s));

  auto box_row = [&](int coord, double sign) {
    LinearInequality q;
    q.coeffs = Vec::Zero(d + 3);
    q.coeffs[coord] = sign;
    q.constant = -box_halfwidth;
    q.tag = IneqTag::BoundingBox;
    out.push_back(q);
  };
  for (int i = 0; i < d; ++i) {
    box_row(2 + i, 1.0);   //  sigma_{2+i} <= B
    box_row(2 + i, -1.0);  // -sigma_{2+i} <= B
  }
  box_row(d + 2, 1.0);  // radius <= B

  LinearInequality rs;  // sigma_{d+3} >= 0
  rs.coeffs = Vec::Zero(d + 3);
  rs.coeffs[d + 2] = -1.0;
  rs.tag = IneqTag::RadiusSign;
  out.push_back(rs);
  return out;
}

}  // namespace gvd
