#include <gvd/oracle.hpp>

#include <algorithm>
#include <cmath>
#include <limits>

namespace gvd {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Per-site bound on the admissible radius at x: value plus direction.
struct Bound {
  int site_id = -1;
  double value = 0.0;
  bool is_upper = true;
};

std::vector<Bound> site_bounds(const Vec& x, const DataSet& ds) {
  std::vector<Bound> out;
  out.reserve(ds.sites.size());
  for (const auto& s : ds.sites) {
    Bound b;
    b.site_id = s.id;
    std::visit(
        [&](const auto& site) {
          using T = std::decay_t<decltype(site)>;
          if constexpr (std::is_same_v<T, PointOutsideSite>) {
            b.value = (x - site.point).norm();
          } else if constexpr (std::is_same_v<T, PointInsideSite>) {
            b.value = (x - site.point).norm();
            b.is_upper = false;
          } else if constexpr (std::is_same_v<T, HalfSpaceSite>) {
            b.value = site.plane.normal.dot(x) - site.plane.height;
          } else if constexpr (std::is_same_v<T, PowerSphereSite>) {
            const double v = (x - site.center).squaredNorm() - site.radius * site.radius;
            b.value = v < 0.0 ? -std::sqrt(-v) : std::sqrt(v);
          } else {
            b.value = (x - site.center).norm() - site.radius;
          }
        },
        s.shape);
    out.push_back(b);
  }
  return out;
}

}  // namespace

RadiusInterval admissible_radius_interval(const Vec& x, const DataSet& ds) {
  ds.validate();
  RadiusInterval iv;
  iv.lo = 0.0;
  iv.hi = kInf;
  for (const Bound& b : site_bounds(x, ds)) {
    if (b.is_upper)
      iv.hi = std::min(iv.hi, b.value);
    else
      iv.lo = std::max(iv.lo, b.value);
  }
  iv.feasible = iv.hi >= iv.lo && iv.hi >= 0.0;
  return iv;
}

std::optional<double> oracle_max_radius(const Vec& x, const DataSet& ds) {
  const RadiusInterval iv = admissible_radius_interval(x, ds);
  if (!iv.feasible) return std::nullopt;
  return iv.hi;
}

std::vector<int> oracle_label(const Vec& x, const DataSet& ds, double eps) {
  const RadiusInterval iv = admissible_radius_interval(x, ds);
  if (!iv.feasible) return {};
  const double tol = eps * (1.0 + x.norm());
  std::vector<int> out;
  for (const Bound& b : site_bounds(x, ds)) {
    const bool active = b.is_upper ? std::abs(b.value - iv.hi) <= tol
                                   : std::abs(b.value - iv.lo) <= tol;
    if (active) out.push_back(b.site_id);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<int> oracle_label_md(const Vec& x, const std::vector<QuadraticFunction>& fs,
                                 double rel_tol) {
  if (fs.empty()) return {};
  std::vector<double> vals(fs.size());
  double best = kInf;
  for (std::size_t i = 0; i < fs.size(); ++i) {
    vals[i] = fs[i].eval(x);
    best = std::min(best, vals[i]);
  }
  const double tol = rel_tol * (1.0 + std::abs(best));
  std::vector<int> out;
  for (std::size_t i = 0; i < fs.size(); ++i)
    if (vals[i] - best <= tol) out.push_back(static_cast<int>(i));
  return out;
}

std::vector<CircumcircleEntry> delaunay_vertices_bruteforce(const std::vector<Vec>& points) {
  const int n = static_cast<int>(points.size());
  std::vector<CircumcircleEntry> out;
  if (n < 3) return out;
  for (const Vec& p : points)
    if (p.size() != 2) throw InvalidInputError("delaunay_vertices_bruteforce: d must be 2");

  double scale = 1.0;
  for (const Vec& p : points) scale = std::max(scale, p.cwiseAbs().maxCoeff());

  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      for (int k = j + 1; k < n; ++k) {
        const Vec &a = points[i], &b = points[j], &c = points[k];
        const double det =
            2.0 * ((b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]));
        if (std::abs(det) <= 1e-12 * scale * scale) continue;  // collinear
        const double sa = a.squaredNorm(), sb = b.squaredNorm(), sc = c.squaredNorm();
        Vec center(2);
        center[0] = ((sb - sa) * (c[1] - a[1]) - (sc - sa) * (b[1] - a[1])) / det;
        center[1] = ((sc - sa) * (b[0] - a[0]) - (sb - sa) * (c[0] - a[0])) / det;
        const double r = (center - a).norm();

        bool empty = true;
        for (int t = 0; t < n && empty; ++t) {
          if (t == i || t == j || t == k) continue;
          if ((center - points[t]).norm() < r - 1e-9 * (1.0 + r)) empty = false;
        }
        if (empty) out.push_back({center, r, {i, j, k}});
      }
    }
  }
  return out;
}

}  // namespace gvd
