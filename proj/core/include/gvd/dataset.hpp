#pragma once

// The site model and the assembly of the linear inequality system that a
// data set induces on the space of admissible spheres.  Each site constrains
// the variable sphere sigma = sigma_{x,r} by one homogeneous inequality in
// R^{d+3}; bounding-box rows and the radius-sign row are added on top so the
// resulting polyhedron is bounded.

#include <gvd/lie.hpp>

#include <variant>
#include <vector>

namespace gvd {

struct PointOutsideSite {
  Vec point;  // must stay on or outside the variable sphere
};
struct PointInsideSite {
  Vec point;  // must stay on or inside the variable sphere
};
struct HalfSpaceSite {
  OrientedPlane plane;  // sphere must stay inside the positive half-space
};
struct PowerSphereSite {
  Vec center;
  double radius = 0.0;  // > 0; Mobius product with the variable sphere <= 0
};
struct ExteriorSphereSite {
  Vec center;
  double radius = 0.0;  // > 0; variable sphere stays in the closed exterior
};

using SiteShape = std::variant<PointOutsideSite, PointInsideSite, HalfSpaceSite,
                               PowerSphereSite, ExteriorSphereSite>;

struct Site {
  SiteShape shape;
  int id = 0;

  int dimension() const;
  void validate() const;
};

struct DataSet {
  std::vector<Site> sites;
  int dimension = 2;

  // At least 2 sites, d >= 2, uniform dimensions; throws InvalidInputError.
  void validate() const;
};

enum class IneqTag { Site, BoundingBox, RadiusSign };

// One inequality coeffs . sigma + constant <= 0 on standard Lie coordinates.
// The Lie signature is pre-folded into coeffs, so evaluation is a plain dot
// product; site rows are homogeneous (constant == 0).
struct LinearInequality {
  Vec coeffs;  // length d+3
  double constant = 0.0;
  IneqTag tag = IneqTag::Site;
  int site_id = -1;  // valid when tag == Site

  double eval(const Vec& sigma) const { return coeffs.dot(sigma) + constant; }
};

// Folds the Lie signature: for the functional <a, .> <= 0 returns c with
// c . sigma = <a, sigma>.
Vec fold_functional(const Vec& a);

LinearInequality inequality_for_site(const Site& s);

// Site rows in file order, then 2d+1 bounding-box rows, then sigma_{d+3} >= 0.
std::vector<LinearInequality> assemble_system(const DataSet& ds, double box_halfwidth);

}  // namespace gvd
