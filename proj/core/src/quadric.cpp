#include <gvd/quadric.hpp>
#include <gvd/oracle.hpp>

#include <algorithm>
#include <cmath>
#include <set>

namespace gvd {

QuadraticForm slice_quadric_form(int d) {
  QuadraticForm f;
  f.Q = Mat::Zero(d + 2, d + 2);
  for (int i = 1; i <= d; ++i) f.Q(i, i) = 1.0;
  f.Q(d + 1, d + 1) = -1.0;
  f.l = Vec::Zero(d + 2);
  f.l[0] = -2.0;
  f.c = 1.0;
  return f;
}

QuadraticForm paraboloid_form(int d) {
  QuadraticForm f;
  f.Q = Mat::Zero(d + 1, d + 1);
  for (int i = 1; i <= d; ++i) f.Q(i, i) = 1.0;
  f.l = Vec::Zero(d + 1);
  f.l[0] = -2.0;
  f.c = 1.0;
  return f;
}

double slice_quadric(const Vec& y, int d) { return slice_quadric_form(d).eval(y); }

Vec slice_quadric_grad(const Vec& y, int d) { return slice_quadric_form(d).grad(y); }

std::vector<double> quadratic_segment_roots(const QuadraticForm& qf, const Vec& v0,
                                            const Vec& v1) {
  const Vec w = v1 - v0;
  const double A = w.dot(qf.Q * w);
  const double B = 2.0 * v0.dot(qf.Q * w) + qf.l.dot(w);
  const double C = qf.eval(v0);
  const double ext = std::max({1.0, v0.norm(), v1.norm()});
  const double scale =
      qf.Q.cwiseAbs().maxCoeff() * ext * ext + qf.l.norm() * ext + std::abs(qf.c);

  std::vector<double> roots;
  if (std::abs(A) <= 1e-12 * scale && std::abs(B) <= 1e-12 * scale &&
      std::abs(C) <= 1e-12 * scale) {
    return {0.0, 1.0};  // whole segment on the quadric
  }
  if (std::abs(A) <= 1e-14 * scale) {
    if (std::abs(B) > 1e-14 * scale) roots.push_back(-C / B);
  } else {
    const double disc = B * B - 4.0 * A * C;
    if (disc >= 0.0) {
      const double s = std::sqrt(disc);
      const double q = -0.5 * (B + (B >= 0 ? s : -s));
      if (std::abs(q) > 1e-300) {
        roots.push_back(q / A);
        roots.push_back(C / q);
      } else {
        roots.push_back(0.0);
      }
    } else if (disc > -1e-12 * (B * B + std::abs(4.0 * A * C) + scale * scale)) {
      roots.push_back(-B / (2.0 * A));  // grazing double root
    }
  }

  std::vector<double> out;
  for (double t : roots) {
    if (t < -1e-10 || t > 1.0 + 1e-10) continue;
    out.push_back(std::clamp(t, 0.0, 1.0));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end(),
                        [](double a, double b) { return std::abs(a - b) <= 1e-9; }),
            out.end());
  return out;
}

std::vector<double> edge_quadric_roots(const Vec& v0, const Vec& v1, int d) {
  if (v0.size() != d + 2 || v1.size() != d + 2)
    throw InvalidInputError("edge_quadric_roots: reduced coordinate length mismatch");
  return quadratic_segment_roots(slice_quadric_form(d), v0, v1);
}

Vec polish_quadric_root(const QuadraticForm& qf, const ReducedSystem& sys,
                        const std::vector<int>& rows, Vec y) {
  const int m = static_cast<int>(y.size());
  const int k = static_cast<int>(rows.size());
  for (int iter = 0; iter < 30; ++iter) {
    Vec F(k + 1);
    Mat J(k + 1, m);
    for (int i = 0; i < k; ++i) {
      const auto& r = sys.rows[rows[i]];
      const double nrm = r.a.norm();
      F[i] = (r.a.dot(y) - r.b) / nrm;
      J.row(i) = r.a.transpose() / nrm;
    }
    const double qscale = 1.0 + y.squaredNorm();
    F[k] = qf.eval(y) / qscale;
    J.row(k) = qf.grad(y).transpose() / qscale;
    if (F.cwiseAbs().maxCoeff() <= 1e-14 * (1.0 + y.norm())) break;
    Vec step = J.colPivHouseholderQr().solve(-F);
    if (!step.allFinite()) break;
    y += step;
    if (step.norm() <= 1e-15 * (1.0 + y.norm())) break;
  }
  return y;
}

std::map<std::vector<int>, std::vector<int>> two_face_keys(const Polytope& p,
                                                           const ReducedSystem& sys) {
  const int m = sys.ambient_dim;
  std::map<std::vector<int>, std::set<int>> acc;
  std::vector<int> subset(std::max(0, m - 2));
  for (std::size_t ei = 0; ei < p.edges.size(); ++ei) {
    const auto& e = p.edges[ei];
    if (static_cast<int>(e.support.size()) > m + 3) continue;  // pathological tight set
    std::vector<int> site_rows;
    for (int row : e.support)
      if (sys.rows[row].tag == IneqTag::Site) site_rows.push_back(row);
    const int s = static_cast<int>(site_rows.size());
    if (s < m - 2) continue;
    std::function<void(int, int)> rec = [&](int pos, int from) {
      if (pos == m - 2) {
        auto& fv = acc[subset];
        fv.insert(e.v0);
        fv.insert(e.v1);
        return;
      }
      for (int i = from; i <= s - (m - 2 - pos); ++i) {
        subset[pos] = site_rows[i];
        rec(pos + 1, i + 1);
      }
    };
    rec(0, 0);
  }
  std::map<std::vector<int>, std::vector<int>> out;
  for (auto& [key, verts] : acc) out.emplace(key, std::vector<int>(verts.begin(), verts.end()));
  return out;
}

bool FaceChart::inside(const Eigen::Vector2d& z) const {
  for (std::size_t j = 0; j < alpha.size(); ++j)
    if (alpha[j].dot(z) - beta[j] > 1e-9 * (1.0 + std::abs(beta[j]) + z.norm()))
      return false;
  return true;
}

double FaceChart::margin(const Eigen::Vector2d& z) const {
  double worst = -1e300;
  for (std::size_t j = 0; j < alpha.size(); ++j)
    worst = std::max(worst, (alpha[j].dot(z) - beta[j]) / (1.0 + std::abs(beta[j]) + z.norm()));
  return worst;
}

bool build_face_chart(const ReducedSystem& sys, const std::vector<int>& key,
                      const std::vector<int>& face_vertex_ids, const Polytope& p,
                      FaceChart& chart) {
  const int m = sys.ambient_dim;
  const int k = static_cast<int>(key.size());
  Mat A(k, m);
  Vec b(k);
  for (int i = 0; i < k; ++i) {
    const auto& r = sys.rows[key[i]];
    const double nrm = r.a.norm();
    A.row(i) = r.a.transpose() / nrm;
    b[i] = r.b / nrm;
  }
  Eigen::CompleteOrthogonalDecomposition<Mat> cod(A);
  chart.y0 = cod.solve(b);
  Eigen::JacobiSVD<Mat> svd(A, Eigen::ComputeFullV);
  int rank = 0;
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()[i] > 1e-10 * svd.singularValues()[0]) ++rank;
  if (m - rank != 2) return false;
  chart.U = svd.matrixV().rightCols(2);

  // Clipping rows: tight somewhere on the face boundary, not part of the key.
  std::set<int> boundary;
  for (int v : face_vertex_ids)
    for (int row : p.vertex_support[v]) boundary.insert(row);
  for (int row : key) boundary.erase(row);

  chart.alpha.clear();
  chart.beta.clear();
  chart.R = 1.0;
  for (int v : face_vertex_ids) {
    Eigen::Vector2d z = chart.U.transpose() * (p.vertices[v] - chart.y0);
    chart.R = std::max(chart.R, z.norm() + 1.0);
  }
  for (int row : boundary) {
    const auto& r = sys.rows[row];
    const double nrm = r.a.norm();
    Eigen::Vector2d alpha = (chart.U.transpose() * r.a) / nrm;
    const double beta = (r.b - r.a.dot(chart.y0)) / nrm;
    if (alpha.norm() <= 1e-11) {
      if (beta < -1e-9 * (1.0 + std::abs(beta))) return false;  // face empty
      continue;  // identically satisfied on the plane
    }
    chart.alpha.push_back(alpha);
    chart.beta.push_back(beta);
  }
  return true;
}

namespace {

struct Branch {
  std::function<Eigen::Vector2d(double)> z;  // plane coordinates
  double t0 = 0.0, t1 = 0.0;
  bool periodic = false;
  int samples = 512;
};

// Parametrized real branches of z^T A z + g . z + c = 0 within radius R of
// the chart origin.
std::vector<Branch> conic_branches(const Eigen::Matrix2d& A, const Eigen::Vector2d& g,
                                   double c, double R, double delta) {
  std::vector<Branch> out;
  const double R1 = R + 1.0;
  const double scale =
      A.cwiseAbs().maxCoeff() + g.norm() / R1 + std::abs(c) / (R1 * R1) + 1e-300;
  const double lam_tol = 1e-10 * scale;

  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> eig(A);
  const Eigen::Vector2d lam = eig.eigenvalues();
  const Eigen::Matrix2d V = eig.eigenvectors();
  const Eigen::Vector2d h = V.transpose() * g;

  auto clamp_samples = [&](double arclen) {
    return static_cast<int>(std::clamp(arclen / std::max(delta, 1e-12), 64.0, 4096.0));
  };
  auto from_rot = [V](double w1, double w2) {
    return Eigen::Vector2d(V * Eigen::Vector2d(w1, w2));
  };

  const bool big1 = std::abs(lam[0]) > lam_tol, big2 = std::abs(lam[1]) > lam_tol;
  if (big1 && big2) {
    const Eigen::Vector2d wc(-h[0] / (2.0 * lam[0]), -h[1] / (2.0 * lam[1]));
    const double k = c - lam[0] * wc[0] * wc[0] - lam[1] * wc[1] * wc[1];
    if (lam[0] * lam[1] > 0) {
      // Ellipse (or empty / single point).
      const double s1 = -k / lam[0], s2 = -k / lam[1];
      if (s1 <= 0.0 || s2 <= 0.0) return out;
      const double a1 = std::sqrt(s1), a2 = std::sqrt(s2);
      Branch b;
      b.z = [=](double t) { return from_rot(wc[0] + a1 * std::cos(t), wc[1] + a2 * std::sin(t)); };
      b.t0 = 0.0;
      b.t1 = 2.0 * M_PI;
      b.periodic = true;
      b.samples = clamp_samples(2.0 * M_PI * std::max(a1, a2));
      out.push_back(std::move(b));
    } else {
      // Hyperbola; indices p (positive) and n (negative eigenvalue).
      const int ip = lam[0] > 0 ? 0 : 1, in = 1 - ip;
      const double lp = lam[ip], ln = lam[in];
      auto emit = [&](auto wp_of, auto wn_of, double smax) {
        Branch b;
        b.z = [=](double s) {
          double w[2];
          w[ip] = wc[ip] + wp_of(s);
          w[in] = wc[in] + wn_of(s);
          return from_rot(w[0], w[1]);
        };
        b.t0 = -smax;
        b.t1 = smax;
        b.samples = clamp_samples(4.0 * R1);
        out.push_back(std::move(b));
      };
      if (std::abs(k) <= lam_tol * R1 * R1) {
        // Degenerate: two crossing lines through the center.
        const double slope = std::sqrt(lp / -ln);
        for (double sg : {1.0, -1.0})
          emit([](double s) { return s; }, [=](double s) { return sg * slope * s; },
               2.0 * R1);
      } else if (k < 0.0) {
        // lp wp^2 + ln wn^2 = -k: branches open along the p axis.
        const double a = std::sqrt(-k / lp), bax = std::sqrt(k / ln);
        const double smax = std::acosh(std::max(2.0, 2.0 * R1 / a)) + 1.0;
        for (double sg : {1.0, -1.0})
          emit([=](double s) { return sg * a * std::cosh(s); },
               [=](double s) { return bax * std::sinh(s); }, smax);
      } else {
        // Branches open along the n axis.
        const double bax = std::sqrt(-k / ln), a = std::sqrt(k / lp);
        const double smax = std::acosh(std::max(2.0, 2.0 * R1 / bax)) + 1.0;
        for (double sg : {1.0, -1.0})
          emit([=](double s) { return a * std::sinh(s); },
               [=](double s) { return sg * bax * std::cosh(s); }, smax);
      }
    }
  } else if (big1 || big2) {
    const int i = big1 ? 0 : 1, j = 1 - i;
    const double lam_i = lam[i];
    const double hi = h[i], hj = h[j];
    if (std::abs(hj) > lam_tol * R1) {
      // Parabola: w_j is a function of w_i.
      Branch b;
      b.z = [=](double t) {
        double w[2];
        w[i] = t;
        w[j] = -(lam_i * t * t + hi * t + c) / hj;
        return from_rot(w[0], w[1]);
      };
      b.t0 = -2.0 * R1;
      b.t1 = 2.0 * R1;
      b.samples = clamp_samples(6.0 * R1);
      out.push_back(std::move(b));
    } else {
      // Parallel line pair lam_i w_i^2 + h_i w_i + c = 0.
      const double disc = hi * hi - 4.0 * lam_i * c;
      if (disc < 0.0) return out;
      const double s = std::sqrt(std::max(0.0, disc));
      std::vector<double> wi{(-hi + s) / (2.0 * lam_i), (-hi - s) / (2.0 * lam_i)};
      if (s <= 1e-12 * (std::abs(hi) + 1.0)) wi.pop_back();
      for (double w0 : wi) {
        Branch b;
        b.z = [=](double t) {
          double w[2];
          w[i] = w0;
          w[j] = t;
          return from_rot(w[0], w[1]);
        };
        b.t0 = -2.0 * R1;
        b.t1 = 2.0 * R1;
        b.samples = clamp_samples(4.0 * R1);
        out.push_back(std::move(b));
      }
    }
  } else {
    // Linear locus g . z + c = 0.
    if (g.norm() <= lam_tol * R1) return out;
    const Eigen::Vector2d z0 = -c * g / g.squaredNorm();
    const Eigen::Vector2d dir(-g[1] / g.norm(), g[0] / g.norm());
    Branch b;
    b.z = [=](double t) { return Eigen::Vector2d(z0 + t * dir); };
    b.t0 = -2.0 * R1;
    b.t1 = 2.0 * R1;
    b.samples = clamp_samples(4.0 * R1);
    out.push_back(std::move(b));
  }
  return out;
}

}  // namespace

std::vector<FaceCurve> quadric_face_curves(const QuadraticForm& qf, const FaceChart& chart,
                                           double delta) {
  Eigen::Matrix2d A2 = chart.U.transpose() * qf.Q * chart.U;
  Eigen::Vector2d g = chart.U.transpose() * qf.grad(chart.y0);
  const double c0 = qf.eval(chart.y0);

  std::vector<FaceCurve> out;
  for (const Branch& br : conic_branches(A2, g, c0, chart.R, delta)) {
    const int n = br.samples;
    auto param = [&](int i) {
      return br.t0 + (br.t1 - br.t0) * (br.periodic ? double(i) / n : double(i) / (n - 1));
    };
    std::vector<Eigen::Vector2d> z(n);
    std::vector<char> in(n);
    for (int i = 0; i < n; ++i) {
      z[i] = br.z(param(i));
      in[i] = chart.inside(z[i]) ? 1 : 0;
    }

    auto refine = [&](double t_in, double t_out) {
      for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (t_in + t_out);
        if (chart.margin(br.z(mid)) <= 0.0)
          t_in = mid;
        else
          t_out = mid;
      }
      return br.z(t_in);
    };

    if (br.periodic && std::all_of(in.begin(), in.end(), [](char c) { return c != 0; })) {
      FaceCurve fc;
      fc.closed = true;
      for (int i = 0; i < n; ++i) fc.points.push_back(chart.embed(z[i]));
      out.push_back(std::move(fc));
      continue;
    }

    // Maximal inside runs (circular for periodic branches; the scan starts at
    // an outside sample so no run is split across the wrap).
    auto at = [&](int i) { return br.periodic ? ((i % n) + n) % n : i; };
    int start = 0;
    if (br.periodic) {
      start = -1;
      for (int i = 0; i < n; ++i)
        if (!in[i]) { start = i; break; }
    }
    int i = start;
    const int end = start + n;
    while (i < end) {
      while (i < end && !in[at(i)]) ++i;
      if (i >= end) break;
      const int run_begin = i;
      while (i < end && in[at(i)]) ++i;
      const int run_end = i;  // exclusive
      FaceCurve fc;
      // Raw (unwrapped) parameters keep the bisection interval local; the
      // trigonometric parametrizations are periodic in t.
      if (br.periodic || run_begin > 0)
        fc.points.push_back(chart.embed(refine(param(run_begin), param(run_begin - 1))));
      for (int j = run_begin; j < run_end; ++j) fc.points.push_back(chart.embed(z[at(j)]));
      if (br.periodic || run_end < n)
        fc.points.push_back(chart.embed(refine(param(run_end - 1), param(run_end))));
      if (fc.points.size() >= 2) out.push_back(std::move(fc));
    }
  }
  return out;
}

namespace {

std::vector<int> tight_site_ids(const ReducedSystem& sys, const Vec& y) {
  std::vector<int> out;
  for (const auto& r : sys.rows) {
    if (r.tag != IneqTag::Site) continue;
    const double sc = 1.0 + std::abs(r.b) + r.a.norm() * y.norm();
    if (std::abs(r.slack(y)) <= 1e-7 * sc) out.push_back(r.site_id);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

GeneralizedDiagram build_diagram(const Polytope& p, const ReducedSystem& sys,
                                 const DataSet& ds, const BoundingBox& box) {
  const int d = sys.d;
  const QuadraticForm qf = slice_quadric_form(d);

  GeneralizedDiagram out;
  out.dimension = d;
  out.sites = ds;
  out.box = box;

  // Vertices: quadric roots on 1-faces whose tight set is all site rows.
  std::vector<Vec> candidates;
  for (const auto& e : p.edges) {
    bool all_site = true;
    for (int row : e.support)
      if (sys.rows[row].tag != IneqTag::Site) { all_site = false; break; }
    if (!all_site) continue;
    const Vec& v0 = p.vertices[e.v0];
    const Vec& v1 = p.vertices[e.v1];
    for (double t : quadratic_segment_roots(qf, v0, v1))
      candidates.push_back(polish_quadric_root(qf, sys, e.support, (1.0 - t) * v0 + t * v1));
  }

  std::vector<Vec> reduced_vertices;
  for (const Vec& y : candidates) {
    bool merged = false;
    for (Vec& v : reduced_vertices)
      if ((v - y).norm() <= 1e-9 * (1.0 + y.norm())) { merged = true; break; }
    if (!merged) reduced_vertices.push_back(y);
  }
  for (const Vec& y : reduced_vertices) {
    DiagramVertex v;
    v.lie_coords = sys.lift(y);
    v.center = y.segment(1, d);
    v.radius = std::max(0.0, y[d + 1]);
    v.tight_sites = tight_site_ids(sys, y);
    out.vertices.push_back(std::move(v));
  }

  // Edge curves: one conic trace per 2-face keyed by site rows only.
  const double delta = box.B / 256.0;
  for (const auto& [key, fv] : two_face_keys(p, sys)) {
    if (fv.size() < 3) continue;
    FaceChart chart;
    if (!build_face_chart(sys, key, fv, p, chart)) continue;
    std::vector<int> sites;
    for (int row : key) sites.push_back(sys.rows[row].site_id);
    std::sort(sites.begin(), sites.end());

    for (FaceCurve& fc : quadric_face_curves(qf, chart, delta)) {
      DiagramEdge e;
      e.defining_sites = sites;
      e.closed = fc.closed;
      for (const Vec& y : fc.points) e.polyline.push_back(y.segment(1, d));
      if (!fc.closed) {
        auto match_vertex = [&](const Vec& y) {
          for (std::size_t i = 0; i < reduced_vertices.size(); ++i)
            if ((reduced_vertices[i] - y).norm() <= 1e-6 * (1.0 + y.norm()))
              return static_cast<int>(i);
          return kBoxBoundary;
        };
        e.v0 = match_vertex(fc.points.front());
        e.v1 = match_vertex(fc.points.back());
      }
      out.edges.push_back(std::move(e));
    }
  }
  return out;
}

GeneralizedDiagram compute_diagram(const DataSet& ds, const ComputeOptions& opts) {
  ds.validate();
  const BoundingBox box = choose_bounding_box(ds, opts.margin);
  const auto ineqs = assemble_system(ds, box.B);
  const ReducedSystem sys =
      normalize_slice(ineqs, ds.dimension, sigma1_bound_for_box(ds.dimension, box.B));
  const FeasiblePoint fp = feasible_point(sys, opts.seed);
  const Polytope poly = halfspace_intersection(sys, fp.point, opts.seed);
  return build_diagram(poly, sys, ds, box);
}

std::vector<int> locate(const Vec& x, const DataSet& ds, double eps) {
  return oracle_label(x, ds, eps);
}

}  // namespace gvd
