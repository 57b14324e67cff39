#include <gvd/affine.hpp>
#include <gvd/lie.hpp>
#include <gvd/oracle.hpp>

#include <algorithm>
#include <cmath>

namespace gvd {

LinearFunctional quadratic_to_functional(const QuadraticFunction& f) {
  require_finite(f.q, "quadratic q");
  require_finite(f.b, "quadratic b");
  const int d = f.dimension();
  const double w = f.a * f.q.squaredNorm() + f.c;
  LinearFunctional out;
  out.avec = Vec::Zero(d + 3);
  out.avec[0] = -f.a - w;
  out.avec[1] = -f.a + w;
  out.avec.segment(2, d) = f.b - 2.0 * f.a * f.q;
  return out;
}

Vec phi(const Vec& x) { return point_to_lie(x).coords; }

std::vector<QuadraticFunction> order_k_family(const std::vector<QuadraticFunction>& fs,
                                              int k,
                                              std::vector<std::vector<int>>* index_sets) {
  const int m = static_cast<int>(fs.size());
  if (k < 1 || k > m) throw InvalidInputError("order_k_family: k out of range");
  const int d = fs.empty() ? 0 : fs[0].dimension();

  std::vector<QuadraticFunction> out;
  if (index_sets) index_sets->clear();
  std::vector<int> idx(k);
  std::function<void(int, int)> rec = [&](int pos, int from) {
    if (pos == k) {
      QuadraticFunction sum;
      sum.q = Vec::Zero(d);
      sum.b = Vec::Zero(d);
      for (int i : idx) {
        const auto& f = fs[i];
        sum.a += f.a;
        sum.b += f.b - 2.0 * f.a * f.q;
        sum.c += f.a * f.q.squaredNorm() + f.c;
      }
      out.push_back(std::move(sum));
      if (index_sets) index_sets->push_back(idx);
      return;
    }
    for (int i = from; i <= m - (k - pos); ++i) {
      idx[pos] = i;
      rec(pos + 1, i + 1);
    }
  };
  rec(0, 0);
  return out;
}

BoundingBox choose_bounding_box(const std::vector<QuadraticFunction>& fs, double margin) {
  double extent = 0.0;
  for (const auto& f : fs)
    if (f.q.size() > 0) extent = std::max(extent, f.q.cwiseAbs().maxCoeff());
  return {std::max(1.0, margin * extent)};
}

namespace {

// L(y) = u . y + k0 on reduced coordinates y = (s_1, x).
struct ReducedFunctional {
  Vec u;
  double k0 = 0.0;
};

ReducedFunctional reduce_functional(const QuadraticFunction& f) {
  const Vec cf = fold_functional(quadratic_to_functional(f).avec);
  const int d = f.dimension();
  ReducedFunctional r;
  r.u = Vec(d + 1);
  r.u[0] = cf[0] - cf[1];
  r.u.segment(1, d) = cf.segment(2, d);
  r.k0 = cf[1];
  return r;
}

}  // namespace

MinimizationDiagram minimization_diagram(const std::vector<QuadraticFunction>& fs,
                                         const BoundingBox& box, std::uint64_t seed) {
  const int m = static_cast<int>(fs.size());
  if (m < 2) throw InvalidInputError("minimization_diagram: need at least 2 functions");
  const int d = fs[0].dimension();
  for (const auto& f : fs)
    if (f.dimension() != d)
      throw InvalidInputError("minimization_diagram: dimension mismatch");

  MinimizationDiagram out;
  out.dimension = d;
  out.order_k = 1;
  for (int i = 0; i < m; ++i) out.index_sets.push_back({i});

  std::vector<ReducedFunctional> L(m);
  for (int i = 0; i < m; ++i) L[i] = reduce_functional(fs[i]);

  const double S1 = sigma1_bound_for_box(d, box.B);
  const QuadraticForm qf = paraboloid_form(d);
  const double delta = box.B / 256.0;

  std::vector<Vec> reduced_vertices;
  auto find_vertex = [&](const Vec& y, double tol) {
    for (std::size_t i = 0; i < reduced_vertices.size(); ++i)
      if ((reduced_vertices[i] - y).norm() <= tol * (1.0 + y.norm()))
        return static_cast<int>(i);
    return -1;
  };

  struct PendingEdge {
    std::vector<int> pair;
    FaceCurve curve;
  };
  std::vector<PendingEdge> pending;

  for (int i = 0; i < m; ++i) {
    ReducedSystem sys;
    sys.d = d;
    sys.ambient_dim = d + 1;
    for (int j = 0; j < m; ++j) {
      if (j == i) continue;
      ReducedInequality r;
      r.a = L[i].u - L[j].u;
      r.b = L[j].k0 - L[i].k0;
      r.tag = IneqTag::Site;
      r.site_id = j;
      sys.rows.push_back(std::move(r));
    }
    auto bound_row = [&](int coord, double sign, double limit) {
      ReducedInequality r;
      r.a = Vec::Zero(d + 1);
      r.a[coord] = sign;
      r.b = limit;
      r.tag = IneqTag::BoundingBox;
      sys.rows.push_back(std::move(r));
    };
    bound_row(0, 1.0, S1);
    bound_row(0, -1.0, S1);
    for (int t = 1; t <= d; ++t) {
      bound_row(t, 1.0, box.B);
      bound_row(t, -1.0, box.B);
    }

    Polytope poly;
    try {
      const FeasiblePoint fp = feasible_point(sys, seed + static_cast<std::uint64_t>(i));
      poly = halfspace_intersection(sys, fp.point, seed + static_cast<std::uint64_t>(i));
    } catch (const InfeasibleError&) {
      continue;  // empty or lower-dimensional minimization region
    }

    // Vertices: paraboloid roots on 1-faces tight in bisector rows only.
    for (const auto& e : poly.edges) {
      bool all_site = true;
      for (int row : e.support)
        if (sys.rows[row].tag != IneqTag::Site) { all_site = false; break; }
      if (!all_site) continue;
      const Vec& v0 = poly.vertices[e.v0];
      const Vec& v1 = poly.vertices[e.v1];
      for (double t : quadratic_segment_roots(qf, v0, v1)) {
        Vec y = polish_quadric_root(qf, sys, e.support, (1.0 - t) * v0 + t * v1);
        if (find_vertex(y, 1e-9) < 0) reduced_vertices.push_back(std::move(y));
      }
    }

    // Edge curves: 2-faces keyed by bisector rows against larger indices only,
    // so each tie set is traced once.
    for (const auto& [key, fv] : two_face_keys(poly, sys)) {
      bool primary = true;
      std::vector<int> tied{i};
      for (int row : key) {
        const int j = sys.rows[row].site_id;
        if (j < i) { primary = false; break; }
        tied.push_back(j);
      }
      if (!primary || fv.size() < 3) continue;
      std::sort(tied.begin(), tied.end());
      FaceChart chart;
      if (!build_face_chart(sys, key, fv, poly, chart)) continue;
      for (FaceCurve& fc : quadric_face_curves(qf, chart, delta))
        pending.push_back({tied, std::move(fc)});
    }
  }

  for (const Vec& y : reduced_vertices) {
    MdVertex v;
    v.point = y.segment(1, d);
    v.min_indices = oracle_label_md(v.point, fs, 1e-7);
    out.vertices.push_back(std::move(v));
  }
  for (PendingEdge& pe : pending) {
    MdEdge e;
    e.pair = pe.pair;
    e.closed = pe.curve.closed;
    for (const Vec& y : pe.curve.points) e.polyline.push_back(y.segment(1, d));
    if (!pe.curve.closed) {
      const int a = find_vertex(pe.curve.points.front(), 1e-6);
      const int b = find_vertex(pe.curve.points.back(), 1e-6);
      e.v0 = a < 0 ? kBoxBoundary : a;
      e.v1 = b < 0 ? kBoxBoundary : b;
    }
    out.edges.push_back(std::move(e));
  }

  // Cells by coarse scan: one representative per single-argmin label seen.
  if (d <= 3) {
    const int res = d == 2 ? 64 : 24;
    std::vector<char> seen(m, 0);
    std::vector<int> grid_idx(d, 0);
    Vec x(d);
    std::function<void(int)> scan = [&](int axis) {
      if (axis == d) {
        const auto lbl = oracle_label_md(x, fs, 1e-9);
        if (lbl.size() == 1 && !seen[lbl[0]]) {
          seen[lbl[0]] = 1;
          out.cells.push_back({lbl[0], x});
        }
        return;
      }
      for (int g = 0; g < res; ++g) {
        x[axis] = -box.B + 2.0 * box.B * (g + 0.5) / res;
        scan(axis + 1);
      }
    };
    scan(0);
  }
  return out;
}

MinimizationDiagram order_k_diagram(const std::vector<QuadraticFunction>& fs, int k,
                                    const BoundingBox& box, std::uint64_t seed) {
  std::vector<std::vector<int>> index_sets;
  const auto family = order_k_family(fs, k, &index_sets);
  if (family.size() < 2) {
    // k = m: a single sum; one cell covering the box.
    MinimizationDiagram out;
    out.dimension = fs.empty() ? 0 : fs[0].dimension();
    out.order_k = k;
    out.index_sets = index_sets;
    out.cells.push_back({0, Vec::Zero(out.dimension)});
    return out;
  }
  MinimizationDiagram out = minimization_diagram(family, box, seed);
  out.order_k = k;
  out.index_sets = index_sets;
  return out;
}

}  // namespace gvd
