#include <doctest.h>
#include <gvd/lp.hpp>

#include <cmath>
#include <random>

using namespace gvd;

namespace {

Vec vN(std::initializer_list<double> xs) {
  Vec v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v[i++] = x;
  return v;
}

LpConstraint row(std::initializer_list<double> a, double b) { return {vN(a), b}; }

}  // namespace

TEST_CASE("box-only maximization") {
  const Vec lo = vN({-2, -3}), hi = vN({5, 7});
  CHECK(seidel_lp({}, vN({1, 0}), lo, hi)[0] == doctest::Approx(5.0));
  CHECK(seidel_lp({}, vN({1, 1}), lo, hi).isApprox(vN({5, 7})));
  CHECK(seidel_lp({}, vN({-1, -1}), lo, hi).isApprox(vN({-2, -3})));
}

TEST_CASE("simple polygon optimum") {
  // max x + y subject to x + 2y <= 4, 3x + y <= 6 inside [-10,10]^2:
  // optimum at the intersection (8/5, 6/5).
  std::vector<LpConstraint> cs{row({1, 2}, 4), row({3, 1}, 6)};
  const Vec x = seidel_lp(cs, vN({1, 1}), vN({-10, -10}), vN({10, 10}), 5);
  CHECK(x[0] == doctest::Approx(8.0 / 5.0));
  CHECK(x[1] == doctest::Approx(6.0 / 5.0));
}

TEST_CASE("degenerate and redundant rows") {
  std::vector<LpConstraint> cs{row({1, 0}, 3), row({1, 0}, 3), row({2, 0}, 6),
                               row({0, 1}, 2), row({1, 1}, 100)};
  const Vec x = seidel_lp(cs, vN({1, 1}), vN({-10, -10}), vN({10, 10}), 1);
  CHECK(x[0] == doctest::Approx(3.0));
  CHECK(x[1] == doctest::Approx(2.0));
}

TEST_CASE("infeasible system throws") {
  std::vector<LpConstraint> cs{row({1, 0}, 0), row({-1, 0}, -1)};  // x <= 0 and x >= 1
  CHECK_THROWS_AS(seidel_lp(cs, vN({1, 0}), vN({-5, -5}), vN({5, 5})), InfeasibleError);
}

TEST_CASE("three dimensions") {
  // max z s.t. z <= x, z <= y, x + y <= 2: optimum z = 1 at (1,1,1).
  std::vector<LpConstraint> cs{row({-1, 0, 1}, 0), row({0, -1, 1}, 0), row({1, 1, 0}, 2)};
  const Vec x = seidel_lp(cs, vN({0, 0, 1}), vN({-4, -4, -4}), vN({4, 4, 4}), 9);
  CHECK(x[2] == doctest::Approx(1.0));
}

TEST_CASE("random feasibility and optimality") {
  // Random constraint sets all satisfied at the origin with slack: the
  // returned point must be feasible, and no sampled feasible point may beat
  // its objective value.
  std::mt19937 rng(77);
  std::uniform_real_distribution<double> u(-1, 1);
  std::uniform_int_distribution<int> nd(2, 5);
  for (int iter = 0; iter < 60; ++iter) {
    const int dim = nd(rng);
    std::vector<LpConstraint> cs;
    for (int i = 0; i < 24; ++i) {
      Vec a(dim);
      for (int j = 0; j < dim; ++j) a[j] = u(rng);
      if (a.norm() < 1e-3) continue;
      cs.push_back({a, 0.3 + std::abs(u(rng))});
    }
    Vec obj(dim), lo = Vec::Constant(dim, -3), hi = Vec::Constant(dim, 3);
    for (int j = 0; j < dim; ++j) obj[j] = u(rng);

    const Vec x = seidel_lp(cs, obj, lo, hi, iter);
    for (const auto& c : cs) CHECK(c.a.dot(x) <= c.b + 1e-8);
    for (int j = 0; j < dim; ++j) {
      CHECK(x[j] >= lo[j] - 1e-9);
      CHECK(x[j] <= hi[j] + 1e-9);
    }

    const double best = obj.dot(x);
    for (int s = 0; s < 200; ++s) {
      Vec y(dim);
      for (int j = 0; j < dim; ++j) y[j] = 3 * u(rng);
      bool feas = true;
      for (const auto& c : cs)
        if (c.a.dot(y) > c.b) { feas = false; break; }
      if (feas) CHECK(obj.dot(y) <= best + 1e-7 * (1 + std::abs(best)));
    }
  }
}

TEST_CASE("seed independence of the optimum value") {
  std::vector<LpConstraint> cs{row({1, 2}, 4), row({3, 1}, 6), row({-1, 1}, 3)};
  const double v0 = vN({1, 1}).dot(seidel_lp(cs, vN({1, 1}), vN({-9, -9}), vN({9, 9}), 0));
  for (std::uint64_t s = 1; s < 8; ++s) {
    const double vs = vN({1, 1}).dot(seidel_lp(cs, vN({1, 1}), vN({-9, -9}), vN({9, 9}), s));
    CHECK(vs == doctest::Approx(v0).epsilon(1e-10));
  }
}
