#include <doctest.h>
#include <gvd/affine.hpp>
#include <gvd/oracle.hpp>

#include <algorithm>
#include <cmath>
#include <random>

using namespace gvd;

namespace {

Vec v2(double a, double b) {
  Vec v(2);
  v << a, b;
  return v;
}

Vec v5(double a, double b, double c, double d, double e) {
  Vec v(5);
  v << a, b, c, d, e;
  return v;
}

QuadraticFunction sqdist(const Vec& q) {
  QuadraticFunction f;
  f.a = 1.0;
  f.q = q;
  f.b = Vec::Zero(q.size());
  f.c = 0.0;
  return f;
}

const MdVertex* md_vertex_near(const MinimizationDiagram& md, const Vec& p, double tol = 1e-6) {
  for (const auto& v : md.vertices)
    if ((v.point - p).norm() <= tol) return &v;
  return nullptr;
}

}  // namespace

TEST_CASE("functional fixtures") {
  // ||x||^2 on R^2.
  CHECK(quadratic_to_functional(sqdist(v2(0, 0))).avec == v5(-1, -1, 0, 0, 0));
  // Affine n.x - h (a = 0).
  QuadraticFunction aff;
  aff.a = 0.0;
  aff.q = v2(0, 0);
  aff.b = v2(3, -1);
  aff.c = -2.0;  // h = 2
  CHECK(quadratic_to_functional(aff).avec == v5(2, -2, 3, -1, 0));
  // Power of a sphere S(q, t): ||x - q||^2 - t^2 factors through the
  // projected sphere vector scaled by -2.
  QuadraticFunction pw;
  pw.a = 1.0;
  pw.q = v2(3, 1);
  pw.b = Vec::Zero(2);
  pw.c = -25.0;
  CHECK(quadratic_to_functional(pw).avec ==
        -2.0 * mobius_project(sphere_to_lie(v2(3, 1), 5).coords));
}

TEST_CASE("factorization through the point-sphere embedding") {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> u(-4, 4);
  for (int i = 0; i < 300; ++i) {
    QuadraticFunction f;
    f.a = u(rng);
    f.q = v2(u(rng), u(rng));
    f.b = v2(u(rng), u(rng));
    f.c = u(rng);
    const Vec avec = quadratic_to_functional(f).avec;
    const Vec x = v2(u(rng), u(rng));
    CHECK(f.eval(x) == doctest::Approx(lie_product(phi(x), avec))
                           .epsilon(1e-12)
                           .scale(1 + std::abs(f.eval(x)) + x.squaredNorm()));
  }
}

TEST_CASE("order-k sums expand correctly") {
  std::vector<QuadraticFunction> fs{sqdist(v2(0, 0)), sqdist(v2(2, 0)), sqdist(v2(0, 2))};
  fs[1].c = 0.7;
  fs[2].a = 2.5;
  std::vector<std::vector<int>> sets;
  const auto fam = order_k_family(fs, 2, &sets);
  REQUIRE(fam.size() == 3);
  CHECK(sets == std::vector<std::vector<int>>{{0, 1}, {0, 2}, {1, 2}});
  std::mt19937 rng(8);
  std::uniform_real_distribution<double> u(-3, 3);
  for (int i = 0; i < 50; ++i) {
    const Vec x = v2(u(rng), u(rng));
    for (std::size_t s = 0; s < sets.size(); ++s) {
      double want = 0;
      for (int idx : sets[s]) want += fs[idx].eval(x);
      CHECK(fam[s].eval(x) == doctest::Approx(want).epsilon(1e-12).scale(1 + std::abs(want)));
    }
  }
  CHECK_THROWS_AS(order_k_family(fs, 0), InvalidInputError);
  CHECK_THROWS_AS(order_k_family(fs, 4), InvalidInputError);
}

TEST_CASE("classical diagram via the affine engine") {
  std::vector<QuadraticFunction> fs{sqdist(v2(0, 0)), sqdist(v2(2, 0)), sqdist(v2(0, 2))};
  const MinimizationDiagram md = minimization_diagram(fs, {8.0}, 0);
  CHECK(md.dimension == 2);
  const MdVertex* v = md_vertex_near(md, v2(1, 1));
  REQUIRE(v != nullptr);
  CHECK(v->min_indices == std::vector<int>{0, 1, 2});

  CHECK(md.cells.size() == 3);
  for (const auto& c : md.cells)
    CHECK(oracle_label_md(c.representative, fs) == std::vector<int>{c.function_index});

  REQUIRE(!md.edges.empty());
  for (const auto& e : md.edges) {
    REQUIRE(e.pair.size() == 2);
    for (std::size_t i = 0; i < e.polyline.size(); i += 4) {
      const Vec& x = e.polyline[i];
      CHECK(fs[e.pair[0]].eval(x) ==
            doctest::Approx(fs[e.pair[1]].eval(x)).epsilon(1e-6).scale(1 + x.squaredNorm()));
    }
  }
}

TEST_CASE("radical axis of two power functions is a straight line") {
  // Powers of S((0,0),1) and S((4,0),2): radical axis x = 13/8.
  QuadraticFunction p1 = sqdist(v2(0, 0));
  p1.c = -1.0;
  QuadraticFunction p2 = sqdist(v2(4, 0));
  p2.c = -4.0;
  const MinimizationDiagram md = minimization_diagram({p1, p2}, {10.0}, 1);
  CHECK(md.vertices.empty());
  REQUIRE(md.edges.size() == 1);
  for (const Vec& x : md.edges[0].polyline)
    CHECK(x[0] == doctest::Approx(13.0 / 8.0).epsilon(1e-7));
}

TEST_CASE("weighted bisector is a circle") {
  // f1 = 2||x||^2, f2 = ||x - (1,0)||^2 + 2: the tie set is the circle
  // (x+1)^2 + y^2 = 4, and f1 wins inside it.
  QuadraticFunction f1 = sqdist(v2(0, 0));
  f1.a = 2.0;
  QuadraticFunction f2 = sqdist(v2(1, 0));
  f2.c = 2.0;
  const MinimizationDiagram md = minimization_diagram({f1, f2}, {4.0}, 2);
  REQUIRE(md.edges.size() == 1);
  const MdEdge& e = md.edges[0];
  CHECK(e.closed);
  CHECK(e.polyline.size() > 16);
  for (const Vec& x : e.polyline)
    CHECK((x - v2(-1, 0)).norm() == doctest::Approx(2.0).epsilon(1e-7));
  // Both cells present.
  CHECK(md.cells.size() == 2);
  for (const auto& c : md.cells)
    CHECK(oracle_label_md(c.representative, {f1, f2}) == std::vector<int>{c.function_index});
}

TEST_CASE("order-2 diagram of three points") {
  std::vector<QuadraticFunction> fs{sqdist(v2(0, 0)), sqdist(v2(2, 0)), sqdist(v2(0, 2))};
  const MinimizationDiagram md = order_k_diagram(fs, 2, {8.0}, 0);
  CHECK(md.order_k == 2);
  REQUIRE(md.index_sets.size() == 3);
  // Each cell label: the set of 2 nearest sites at the representative.
  CHECK(md.cells.size() == 3);
  for (const auto& c : md.cells) {
    const Vec& x = md.cells[&c - md.cells.data()].representative;
    std::vector<std::pair<double, int>> vals;
    for (int i = 0; i < 3; ++i) vals.emplace_back(fs[i].eval(x), i);
    std::sort(vals.begin(), vals.end());
    std::vector<int> two{vals[0].second, vals[1].second};
    std::sort(two.begin(), two.end());
    CHECK(md.index_sets[c.function_index] == two);
  }
}

TEST_CASE("order-m diagram collapses to one cell") {
  std::vector<QuadraticFunction> fs{sqdist(v2(0, 0)), sqdist(v2(2, 0))};
  const MinimizationDiagram md = order_k_diagram(fs, 2, {8.0}, 0);
  CHECK(md.cells.size() == 1);
  CHECK(md.vertices.empty());
  CHECK(md.edges.empty());
  CHECK(md.index_sets == std::vector<std::vector<int>>{{0, 1}});
}

TEST_CASE("grid agreement with the argmin oracle") {
  std::mt19937 rng(23);
  std::uniform_real_distribution<double> u(-2, 2);
  std::vector<QuadraticFunction> fs;
  for (int i = 0; i < 5; ++i) {
    QuadraticFunction f = sqdist(v2(u(rng), u(rng)));
    f.a = 0.5 + std::abs(u(rng));
    f.c = u(rng);
    fs.push_back(f);
  }
  const BoundingBox box{6.0};
  const MinimizationDiagram md = minimization_diagram(fs, box, 3);
  // Every robust single-argmin grid point lands in a cell the diagram found.
  std::vector<char> have(fs.size(), 0);
  for (const auto& c : md.cells) have[c.function_index] = 1;
  for (double x = -5.5; x <= 5.5; x += 0.5) {
    for (double y = -5.5; y <= 5.5; y += 0.5) {
      const auto lbl = oracle_label_md(v2(x, y), fs, 1e-6);
      if (lbl.size() == 1) CHECK(have[lbl[0]] == 1);
    }
  }
}
