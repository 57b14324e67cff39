#include <gvd/hull.hpp>
#include <gvd/lp.hpp>

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>

namespace gvd {

BoundingBox choose_bounding_box(const DataSet& ds, double margin) {
  ds.validate();
  double extent = 0.0;
  for (const auto& s : ds.sites) {
    std::visit(
        [&](const auto& site) {
          using T = std::decay_t<decltype(site)>;
          if constexpr (std::is_same_v<T, PointOutsideSite> || std::is_same_v<T, PointInsideSite>) {
            extent = std::max(extent, site.point.cwiseAbs().maxCoeff());
          } else if constexpr (std::is_same_v<T, HalfSpaceSite>) {
            extent = std::max(extent, std::abs(site.plane.height));
          } else {
            extent = std::max(extent, site.center.cwiseAbs().maxCoeff() + site.radius);
          }
        },
        s.shape);
  }
  return {std::max(1.0, margin * extent)};
}

Vec ReducedSystem::lift(const Vec& y) const {
  Vec sigma(d + 3);
  sigma[0] = y[0];
  sigma[1] = 1.0 - y[0];
  sigma.tail(d + 1) = y.tail(d + 1);
  return sigma;
}

Vec ReducedSystem::reduce(const Vec& sigma) const {
  Vec y(d + 2);
  y[0] = sigma[0];
  y.tail(d + 1) = sigma.tail(d + 1);
  return y;
}

double sigma1_bound_for_box(int d, double B) {
  return 0.5 * (1.0 + (d + 1) * B * B) + 1.0;
}

ReducedSystem normalize_slice(const std::vector<LinearInequality>& ineqs, int d,
                              double sigma1_bound) {
  ReducedSystem sys;
  sys.d = d;
  sys.ambient_dim = d + 2;
  for (const auto& q : ineqs) {
    if (q.coeffs.size() != d + 3)
      throw InvalidInputError("normalize_slice: coefficient length mismatch");
    ReducedInequality r;
    r.a = Vec(d + 2);
    r.a[0] = q.coeffs[0] - q.coeffs[1];
    r.a.tail(d + 1) = q.coeffs.tail(d + 1);
    r.b = -(q.constant + q.coeffs[1]);
    r.tag = q.tag;
    r.site_id = q.site_id;
    sys.rows.push_back(std::move(r));
  }
  if (sigma1_bound > 0.0) {
    for (double sign : {1.0, -1.0}) {
      ReducedInequality r;
      r.a = Vec::Zero(d + 2);
      r.a[0] = sign;
      r.b = sigma1_bound;
      r.tag = IneqTag::BoundingBox;
      sys.rows.push_back(std::move(r));
    }
  }
  return sys;
}

FeasiblePoint feasible_point(const ReducedSystem& sys, std::uint64_t seed) {
  const int m = sys.ambient_dim;
  double reach = 1.0;
  for (const auto& r : sys.rows)
    if (r.tag != IneqTag::Site) reach = std::max(reach, std::abs(r.b) / std::max(1e-30, r.a.norm()));
  reach += 1.0;

  std::vector<LpConstraint> cons;
  cons.reserve(sys.rows.size());
  for (const auto& r : sys.rows) {
    const double nrm = r.a.norm();
    if (nrm <= 0.0) continue;
    LpConstraint c;
    c.a = Vec(m + 1);
    c.a.head(m) = r.a / nrm;
    c.a[m] = 1.0;  // row-normalized slack variable
    c.b = r.b / nrm;
    cons.push_back(std::move(c));
  }
  Vec objective = Vec::Zero(m + 1);
  objective[m] = 1.0;
  Vec lo = Vec::Constant(m + 1, -reach), hi = Vec::Constant(m + 1, reach);
  Vec z = seidel_lp(std::move(cons), objective, lo, hi, seed);
  FeasiblePoint fp{z.head(m), z[m]};
  if (!(fp.slack > kFeasTol))
    throw InfeasibleError("empty sphere family: no strictly feasible point");
  return fp;
}

// ---------------------------------------------------------------------------
// Convex hull in general dimension
// ---------------------------------------------------------------------------

namespace {

// Sign of det of the m x m matrix with the given rows, in exact rational
// arithmetic (inputs are doubles, hence exactly representable).
int exact_det_sign(const std::vector<Vec>& rows) {
  const int m = static_cast<int>(rows.size());
  std::vector<std::vector<mpq_class>> a(m, std::vector<mpq_class>(m));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) a[i][j] = mpq_class(rows[i][j]);
  int sign = 1;
  for (int col = 0; col < m; ++col) {
    int piv = -1;
    for (int r = col; r < m; ++r)
      if (a[r][col] != 0) { piv = r; break; }
    if (piv < 0) return 0;
    if (piv != col) {
      std::swap(a[piv], a[col]);
      sign = -sign;
    }
    if (a[col][col] < 0) sign = -sign;
    for (int r = col + 1; r < m; ++r) {
      if (a[r][col] == 0) continue;
      mpq_class f = a[r][col] / a[col][col];
      for (int j = col; j < m; ++j) a[r][j] -= f * a[col][j];
    }
  }
  return sign;
}

// Orientation of q relative to the hyperplane through base points: sign of
// det[b1-b0, ..., b_{m-1}-b0, q-b0] over the lifted simplex.
int exact_orientation(const std::vector<Vec>& base, const Vec& q) {
  std::vector<Vec> rows;
  rows.reserve(base.size());
  for (std::size_t i = 1; i < base.size(); ++i) rows.push_back(base[i] - base[0]);
  rows.push_back(q - base[0]);
  return exact_det_sign(rows);
}

struct Facet {
  std::vector<int> verts;  // m point indices
  std::vector<int> neigh;  // m facet ids, neigh[k] across the ridge without verts[k]
  Vec normal;              // unit
  double offset = 0.0;
  bool dead = false;
};

class HullBuilder {
 public:
  HullBuilder(const std::vector<Vec>& pts, std::uint64_t seed)
      : pts_(pts), m_(static_cast<int>(pts.empty() ? 0 : pts[0].size())), rng_(seed ^ 0xc0ffee) {}

  ConvexHull build() {
    const int n = static_cast<int>(pts_.size());
    if (m_ < 2 || n < m_ + 1)
      throw DegenerateInputError("convex_hull: not enough points");
    scale_ = 1.0;
    for (const auto& p : pts_) scale_ = std::max(scale_, p.cwiseAbs().maxCoeff());

    std::vector<int> simplex = initial_simplex();
    interior_ = Vec::Zero(m_);
    for (int i : simplex) interior_ += pts_[i];
    interior_ /= static_cast<double>(simplex.size());
    make_initial_facets(simplex);

    // Conflict lists: every pending point is owned by one facet it can see.
    std::vector<char> used(n, 0);
    for (int i : simplex) used[i] = 1;
    std::vector<int> order;
    for (int i = 0; i < n; ++i)
      if (!used[i]) order.push_back(i);
    std::shuffle(order.begin(), order.end(), rng_);
    conflicts_.assign(facets_.size(), {});
    std::vector<int> work;
    for (int i : order) {
      for (std::size_t f = 0; f < facets_.size(); ++f) {
        if (visibility(facets_[f], pts_[i]) > 0) {
          if (conflicts_[f].empty()) work.push_back(static_cast<int>(f));
          conflicts_[f].push_back(i);
          break;
        }
      }
    }
    while (!work.empty()) {
      const int f = work.back();
      work.pop_back();
      if (facets_[f].dead || conflicts_[f].empty()) continue;
      // Farthest conflict point first; better conditioned intermediate hulls.
      auto& list = conflicts_[f];
      std::size_t pick = 0;
      double best = -1.0;
      for (std::size_t j = 0; j < list.size(); ++j) {
        const double dist = facets_[f].normal.dot(pts_[list[j]]) - facets_[f].offset;
        if (dist > best) { best = dist; pick = j; }
      }
      const int p = list[pick];
      list.erase(list.begin() + pick);
      insert_point(p, f, work);
      if (!facets_[f].dead && !conflicts_[f].empty()) work.push_back(f);
    }

    ConvexHull out;
    std::vector<int> remap(facets_.size(), -1);
    for (std::size_t f = 0; f < facets_.size(); ++f) {
      if (facets_[f].dead) continue;
      remap[f] = static_cast<int>(out.facets.size());
      out.facets.push_back({facets_[f].verts, facets_[f].normal, facets_[f].offset});
    }
    for (std::size_t f = 0; f < facets_.size(); ++f) {
      if (facets_[f].dead) continue;
      for (int g : facets_[f].neigh) {
        if (g < 0 || facets_[g].dead) continue;
        if (remap[f] < remap[g]) out.ridges.emplace_back(remap[f], remap[g]);
      }
    }
    return out;
  }

 private:
  std::vector<int> initial_simplex() {
    const int n = static_cast<int>(pts_.size());
    // Farthest pair along the axis of largest extent.
    int lo = 0, hi = 0;
    double best = -1.0;
    for (int axis = 0; axis < m_; ++axis) {
      int a = 0, b = 0;
      for (int i = 1; i < n; ++i) {
        if (pts_[i][axis] < pts_[a][axis]) a = i;
        if (pts_[i][axis] > pts_[b][axis]) b = i;
      }
      double sep = pts_[b][axis] - pts_[a][axis];
      if (sep > best) { best = sep; lo = a; hi = b; }
    }
    if (!(best > 1e-13 * scale_))
      throw DegenerateInputError("convex_hull: all points coincide");

    std::vector<int> simplex{lo, hi};
    Mat basis(m_, m_);  // orthonormal columns spanning current directions
    int rank = 0;
    {
      Vec dir = pts_[hi] - pts_[lo];
      basis.col(rank++) = dir / dir.norm();
    }
    while (static_cast<int>(simplex.size()) < m_ + 1) {
      int pick = -1;
      double bestres = 0.0;
      Vec bestresid;
      for (int i = 0; i < n; ++i) {
        Vec v = pts_[i] - pts_[simplex[0]];
        Vec resid = v - basis.leftCols(rank) * (basis.leftCols(rank).transpose() * v);
        double rn = resid.norm();
        if (rn > bestres) { bestres = rn; pick = i; bestresid = resid; }
      }
      if (pick < 0 || bestres <= 1e-11 * scale_)
        throw DegenerateInputError("convex_hull: points are affinely dependent");
      simplex.push_back(pick);
      basis.col(rank++) = bestresid / bestres;
    }
    return simplex;
  }

  void set_plane(Facet& f) {
    Mat diffs(m_ - 1, m_);
    for (int i = 1; i < m_; ++i)
      diffs.row(i - 1) = (pts_[f.verts[i]] - pts_[f.verts[0]]).transpose();
    Eigen::JacobiSVD<Mat> svd(diffs, Eigen::ComputeFullV);
    Vec nrm = svd.matrixV().col(m_ - 1);
    double off = nrm.dot(pts_[f.verts[0]]);
    if (nrm.dot(interior_) > off) { nrm = -nrm; off = -off; }
    f.normal = nrm;
    f.offset = off;
  }

  // +1 visible (strictly outside), 0 on the plane, -1 inside.  Uses the
  // floating plane with an exact-determinant fallback near zero.
  int visibility(const Facet& f, const Vec& q) const {
    const double dist = f.normal.dot(q) - f.offset;
    const double tol = 1e-11 * (1.0 + scale_);
    if (dist > tol) return 1;
    if (dist < -tol) return -1;
    std::vector<Vec> base;
    base.reserve(f.verts.size());
    for (int v : f.verts) base.push_back(pts_[v]);
    const int sq = exact_orientation(base, q);
    if (sq == 0) return 0;
    const int si = exact_orientation(base, interior_);
    if (si == 0) return 0;  // interior degenerate against this facet; treat as on-plane
    return sq == si ? -1 : 1;
  }

  void make_initial_facets(const std::vector<int>& simplex) {
    const int k = m_ + 1;
    for (int omit = 0; omit < k; ++omit) {
      Facet f;
      for (int i = 0; i < k; ++i)
        if (i != omit) f.verts.push_back(simplex[i]);
      f.neigh.assign(m_, -1);
      set_plane(f);
      facets_.push_back(std::move(f));
    }
    // Facet "omit" lacks simplex[omit]; across the ridge missing verts[j]
    // (== simplex[j'] for some j') lies the facet omitting that vertex.
    for (int omit = 0; omit < k; ++omit) {
      Facet& f = facets_[omit];
      for (int slot = 0; slot < m_; ++slot) {
        int v = f.verts[slot];
        for (int j = 0; j < k; ++j)
          if (simplex[j] == v) { f.neigh[slot] = j; break; }
      }
    }
  }

  void insert_point(int p, int seed_facet, std::vector<int>& work) {
    const Vec& q = pts_[p];
    if (facets_[seed_facet].dead || visibility(facets_[seed_facet], q) <= 0)
      return;  // stale conflict entry

    // Flood fill the visible region.
    std::vector<int> visible{seed_facet};
    std::vector<char> isvis(facets_.size(), 0);
    isvis[seed_facet] = 1;
    for (std::size_t head = 0; head < visible.size(); ++head) {
      for (int g : facets_[visible[head]].neigh) {
        if (g < 0 || facets_[g].dead || isvis[g]) continue;
        if (visibility(facets_[g], q) > 0) {
          isvis[g] = 1;
          visible.push_back(g);
        }
      }
    }

    struct HorizonEntry {
      std::vector<int> ridge;
      int hidden;
    };
    std::vector<HorizonEntry> horizon;
    for (int f : visible) {
      for (int slot = 0; slot < m_; ++slot) {
        int g = facets_[f].neigh[slot];
        if (g < 0 || isvis[g]) continue;
        HorizonEntry e;
        for (int i = 0; i < m_; ++i)
          if (i != slot) e.ridge.push_back(facets_[f].verts[i]);
        e.hidden = g;
        horizon.push_back(std::move(e));
      }
    }
    if (horizon.empty()) return;  // numerically inconsistent; keep hull as-is

    // New facets: ridge + p.  Link to the hidden facet across the old ridge
    // and to sibling new facets across sub-ridges through p.
    std::map<std::vector<int>, std::pair<int, int>> open_ridges;
    std::vector<int> created;
    for (const auto& e : horizon) {
      Facet nf;
      nf.verts.push_back(p);
      for (int v : e.ridge) nf.verts.push_back(v);
      nf.neigh.assign(m_, -1);
      set_plane(nf);
      const int id = static_cast<int>(facets_.size());
      nf.neigh[0] = e.hidden;
      facets_.push_back(std::move(nf));
      created.push_back(id);

      // Re-point the hidden facet's slot (it currently references a dying
      // visible facet across this ridge).
      Facet& hid = facets_[e.hidden];
      for (int slot = 0; slot < m_; ++slot) {
        int g = hid.neigh[slot];
        if (g >= 0 && isvis[g]) {
          // Ridge across this slot must match e.ridge.
          std::vector<int> rv;
          for (int i = 0; i < m_; ++i)
            if (i != slot) rv.push_back(hid.verts[i]);
          std::sort(rv.begin(), rv.end());
          std::vector<int> er = e.ridge;
          std::sort(er.begin(), er.end());
          if (rv == er) { hid.neigh[slot] = id; break; }
        }
      }

      // Sibling adjacency via sub-ridges {p} + ridge minus one vertex.
      for (int slot = 1; slot < m_; ++slot) {
        std::vector<int> key;
        for (int i = 1; i < m_; ++i)
          if (i != slot) key.push_back(facets_[id].verts[i]);
        std::sort(key.begin(), key.end());
        auto it = open_ridges.find(key);
        if (it == open_ridges.end()) {
          open_ridges.emplace(std::move(key), std::make_pair(id, slot));
        } else {
          facets_[id].neigh[slot] = it->second.first;
          facets_[it->second.first].neigh[it->second.second] = id;
          open_ridges.erase(it);
        }
      }
    }
    conflicts_.resize(facets_.size());

    // Orphans from dying facets move to the first new facet that sees them.
    std::vector<int> orphans;
    for (int f : visible) {
      orphans.insert(orphans.end(), conflicts_[f].begin(), conflicts_[f].end());
      conflicts_[f].clear();
      facets_[f].dead = true;
    }
    for (int o : orphans) {
      if (o == p) continue;
      for (int nf : created) {
        if (visibility(facets_[nf], pts_[o]) > 0) {
          if (conflicts_[nf].empty()) work.push_back(nf);
          conflicts_[nf].push_back(o);
          break;
        }
      }
    }
  }

  const std::vector<Vec>& pts_;
  int m_;
  std::mt19937_64 rng_;
  double scale_ = 1.0;
  Vec interior_;
  std::vector<Facet> facets_;
  std::vector<std::vector<int>> conflicts_;
};

}  // namespace

ConvexHull convex_hull(const std::vector<Vec>& points, std::uint64_t seed) {
  return HullBuilder(points, seed).build();
}

// ---------------------------------------------------------------------------
// Halfspace intersection
// ---------------------------------------------------------------------------

namespace {

double row_scale(const ReducedInequality& r, const Vec& v) {
  return 1.0 + std::abs(r.b) + r.a.norm() * v.norm();
}

}  // namespace

std::vector<int> Polytope::facet_vertices(int row) const {
  std::vector<int> out;
  for (std::size_t v = 0; v < vertices.size(); ++v)
    if (std::binary_search(vertex_support[v].begin(), vertex_support[v].end(), row))
      out.push_back(static_cast<int>(v));
  return out;
}

Polytope halfspace_intersection(const ReducedSystem& sys, const Vec& interior,
                                std::uint64_t seed) {
  const int m = sys.ambient_dim;
  if (interior.size() != m)
    throw InvalidInputError("halfspace_intersection: interior dimension mismatch");

  // Row-normalize and dualize about the interior point.
  std::vector<Vec> dual;
  dual.reserve(sys.rows.size());
  std::vector<int> dual_row;  // dual point index -> row index
  for (std::size_t i = 0; i < sys.rows.size(); ++i) {
    const auto& r = sys.rows[i];
    const double nrm = r.a.norm();
    if (nrm <= 0.0) throw InvalidInputError("halfspace_intersection: zero row");
    const double slack = (r.b - r.a.dot(interior)) / nrm;
    if (!(slack > 1e-12))
      throw InvalidInputError("halfspace_intersection: interior point not strictly feasible");
    dual.push_back(r.a / (nrm * slack));
    dual_row.push_back(static_cast<int>(i));
  }

  ConvexHull hull = convex_hull(dual, seed);

  Polytope poly;
  poly.ambient_dim = m;

  // Primal vertex for each dual facet, refined on its tight rows.
  std::vector<int> facet_vertex(hull.facets.size(), -1);
  std::vector<Vec> raw(hull.facets.size());
  for (std::size_t f = 0; f < hull.facets.size(); ++f) {
    const auto& fc = hull.facets[f];
    if (!(fc.offset > 1e-12)) continue;  // sliver or unbounded direction
    Vec v = fc.normal / fc.offset + interior;

    // Loose support, then least-squares refinement on those rows.
    std::vector<int> loose;
    for (std::size_t i = 0; i < sys.rows.size(); ++i)
      if (std::abs(sys.rows[i].slack(v)) <= 1e-6 * row_scale(sys.rows[i], v))
        loose.push_back(static_cast<int>(i));
    if (static_cast<int>(loose.size()) >= m) {
      Mat A(loose.size(), m);
      Vec b(loose.size());
      for (std::size_t k = 0; k < loose.size(); ++k) {
        const auto& r = sys.rows[loose[k]];
        const double nrm = r.a.norm();
        A.row(k) = r.a.transpose() / nrm;
        b[k] = r.b / nrm;
      }
      Vec refined = A.colPivHouseholderQr().solve(b);
      if ((refined - v).norm() <= 1e-3 * (1.0 + v.norm())) v = refined;
    }

    // Reject vertices that violate the system beyond tolerance.
    double worst = 0.0;
    for (const auto& r : sys.rows)
      worst = std::min(worst, r.slack(v) / row_scale(r, v));
    if (worst < -1e-6) continue;
    raw[f] = std::move(v);
    facet_vertex[f] = -2;  // valid, not yet merged
  }

  // Merge coincident vertices (sliding window on the first coordinate).
  std::vector<std::size_t> idx;
  for (std::size_t f = 0; f < hull.facets.size(); ++f)
    if (facet_vertex[f] == -2) idx.push_back(f);
  std::sort(idx.begin(), idx.end(),
            [&](std::size_t a, std::size_t b) { return raw[a][0] < raw[b][0]; });
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (facet_vertex[idx[i]] >= 0) continue;
    const Vec& vi = raw[idx[i]];
    const double tol = 1e-9 * (1.0 + vi.norm());
    const int id = static_cast<int>(poly.vertices.size());
    poly.vertices.push_back(vi);
    facet_vertex[idx[i]] = id;
    for (std::size_t j = i + 1; j < idx.size(); ++j) {
      if (raw[idx[j]][0] - vi[0] > tol) break;
      if (facet_vertex[idx[j]] < 0 && (raw[idx[j]] - vi).norm() <= tol)
        facet_vertex[idx[j]] = id;
    }
  }

  poly.vertex_support.resize(poly.vertices.size());
  for (std::size_t v = 0; v < poly.vertices.size(); ++v) {
    for (std::size_t i = 0; i < sys.rows.size(); ++i)
      if (std::abs(sys.rows[i].slack(poly.vertices[v])) <=
          kFeasTol * row_scale(sys.rows[i], poly.vertices[v]))
        poly.vertex_support[v].push_back(static_cast<int>(i));
  }

  std::map<std::pair<int, int>, std::size_t> seen;
  for (const auto& [f, g] : hull.ridges) {
    int vf = facet_vertex[f], vg = facet_vertex[g];
    if (vf < 0 || vg < 0 || vf == vg) continue;
    auto key = std::minmax(vf, vg);
    if (seen.count({key.first, key.second})) continue;
    Polytope::Edge e;
    e.v0 = key.first;
    e.v1 = key.second;
    std::set_intersection(poly.vertex_support[vf].begin(), poly.vertex_support[vf].end(),
                          poly.vertex_support[vg].begin(), poly.vertex_support[vg].end(),
                          std::back_inserter(e.support));
    if (static_cast<int>(e.support.size()) < m - 1) continue;
    seen[{key.first, key.second}] = poly.edges.size();
    poly.edges.push_back(std::move(e));
  }
  (void)dual_row;
  return poly;
}

std::vector<Polytope::Edge> diagram_edges(const Polytope& p, const ReducedSystem& sys) {
  std::vector<Polytope::Edge> out;
  for (const auto& e : p.edges) {
    int nonsite = 0;
    for (int row : e.support)
      if (sys.rows[row].tag != IneqTag::Site) ++nonsite;
    if (nonsite <= 1) out.push_back(e);
  }
  return out;
}

}  // namespace gvd
