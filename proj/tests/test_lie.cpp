#include <doctest.h>
#include <gvd/lie.hpp>

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

double quadric_residual(const Vec& x) {
  return std::abs(lie_product(x, x)) / std::max(1.0, x.squaredNorm());
}

}  // namespace

TEST_CASE("point coordinates") {
  CHECK(point_to_lie(v2(0, 0)).coords == v5(0.5, 0.5, 0, 0, 0));
  CHECK(point_to_lie(v2(3, 1)).coords == v5(5.5, -4.5, 3, 1, 0));
  CHECK(point_to_lie(v2(3, 1)).kind == LieKind::Point);
  CHECK(lie_product(point_to_lie(v2(3, 1)), point_to_lie(v2(3, 1))) == 0.0);
  CHECK_THROWS_AS(point_to_lie(v2(1.0 / 0.0, 0)), InvalidInputError);
}

TEST_CASE("point sphere coincidence") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(-5, 5);
  for (int i = 0; i < 50; ++i) {
    Vec p = v2(u(rng), u(rng));
    CHECK(point_to_lie(p).coords == sphere_to_lie(p, 0.0).coords);
  }
}

TEST_CASE("sphere coordinates") {
  CHECK(sphere_to_lie(v2(3, 1), 5).coords == v5(-7, 8, 3, 1, 5));
  CHECK(sphere_to_lie(v2(2, 0), 1).coords == v5(2, -1, 2, 0, 1));
  CHECK(sphere_to_lie(v2(0, 0), 0).coords == v5(0.5, 0.5, 0, 0, 0));
  CHECK(lie_product(v5(2, -1, 2, 0, 1), v5(2, -1, 2, 0, 1)) == 0.0);
  CHECK_THROWS_AS(sphere_to_lie(v2(0, 0), 0.0 / 0.0), InvalidInputError);
}

TEST_CASE("plane coordinates") {
  CHECK(plane_to_lie({v2(0, 1), 0}).coords == v5(0, 0, 0, 1, 1));
  CHECK(plane_to_lie({v2(1, 0), 2}).coords == v5(2, -2, 1, 0, 1));
  CHECK(plane_to_lie({v2(0.6, 0.8), 1}).coords == v5(1, -1, 0.6, 0.8, 1));
  CHECK(lie_product(v5(2, -2, 1, 0, 1), v5(2, -2, 1, 0, 1)) == 0.0);
  CHECK_THROWS_AS(plane_to_lie({v2(1, 1), 0}), InvalidInputError);
}

TEST_CASE("lie product fixtures") {
  CHECK(lie_product(v5(-7, 8, 3, 1, 5), v5(-7, 8, 3, 1, 5)) == 0.0);
  CHECK(lie_product(point_to_lie(v2(0, 0)), point_to_lie(v2(2, 0))) == doctest::Approx(-2.0));
  CHECK(lie_product(sphere_to_lie(v2(0, 0), 1), sphere_to_lie(v2(3, 0), 2)) ==
        doctest::Approx(-4.0));
  Vec a(5), b(6);
  a.setZero();
  b.setZero();
  CHECK_THROWS_AS(lie_product(a, b), InvalidInputError);
}

TEST_CASE("mobius projection") {
  CHECK(mobius_project(v5(-7, 8, 3, 1, 5)) == v5(-7, 8, 3, 1, 0));
  Vec p = point_to_lie(v2(1, 2)).coords;
  CHECK(mobius_project(p) == p);
  CHECK(mobius_project(mobius_project(v5(1, 2, 3, 4, 5))) == mobius_project(v5(1, 2, 3, 4, 5)));
}

TEST_CASE("center and radius maps") {
  LieVector s = sphere_to_lie(v2(3, 1), 5);
  CHECK(center_of(s) == v2(3, 1));
  CHECK(radius_of(s) == 5.0);
  LieVector q = sphere_to_lie(v2(2, 0), 1);
  CHECK(center_of(q) == v2(2, 0));
  CHECK(radius_of(q) == 1.0);
  Vec p = v2(0.25, -3);
  CHECK(center_of(point_to_lie(p)) == p);
  CHECK(radius_of(point_to_lie(p)) == 0.0);
  CHECK_THROWS_AS(center_of(plane_to_lie({v2(1, 0), 0})), InvalidInputError);
}

TEST_CASE("improper point") {
  CHECK(improper_point(2) == v5(1, -1, 0, 0, 0));
  CHECK(lie_product(improper_point(2), improper_point(2)) == 0.0);
}

TEST_CASE("predicate fixtures") {
  LieVector s315 = sphere_to_lie(v2(3, 1), 5);
  CHECK_FALSE(predicate(point_to_lie(v2(3, 1)), s315, Relation::PointIncidentSphere));
  CHECK(predicate(point_to_lie(v2(8, 1)), s315, Relation::PointIncidentSphere));
  CHECK(predicate(point_to_lie(v2(3, 2)), s315, Relation::PointInsideSphere));
  CHECK(predicate(point_to_lie(v2(30, 1)), s315, Relation::PointOutsideSphere));

  LieVector c1 = sphere_to_lie(v2(0, 0), 1), c2 = sphere_to_lie(v2(2, 0), 1);
  CHECK(predicate(c1, c2, Relation::ExternallyTangent));
  CHECK(predicate(s315, s315, Relation::OrientedContact));

  LieVector up = plane_to_lie({v2(0, 1), 0});
  CHECK(predicate(point_to_lie(v2(0, 3)), up, Relation::PointInPositiveHalfspace));
  CHECK(predicate(point_to_lie(v2(5, 0)), up, Relation::PointIncidentPlane));
  CHECK(predicate(sphere_to_lie(v2(0, 3), 1), up, Relation::SphereInPositiveHalfspace));

  CHECK_THROWS_AS(predicate(up, up, Relation::PointInsideSphere), InvalidInputError);
}

TEST_CASE("constructor outputs stay on the quadric") {
  std::mt19937 rng(42);
  std::uniform_real_distribution<double> u(-50, 50);
  std::uniform_int_distribution<int> dim(2, 6);
  for (int i = 0; i < 500; ++i) {
    const int d = dim(rng);
    Vec p(d), n(d);
    for (int j = 0; j < d; ++j) p[j] = u(rng);
    for (int j = 0; j < d; ++j) n[j] = u(rng);
    if (n.norm() == 0) continue;
    n /= n.norm();
    CHECK(quadric_residual(point_to_lie(p).coords) <= 1e-10);
    CHECK(quadric_residual(sphere_to_lie(p, u(rng)).coords) <= 1e-10);
    CHECK(quadric_residual(plane_to_lie({n, u(rng)}).coords) <= 1e-10);
  }
}

TEST_CASE("product identities on random input") {
  std::mt19937 rng(9);
  std::uniform_real_distribution<double> u(-10, 10);
  std::uniform_real_distribution<double> upos(0.1, 8);
  for (int i = 0; i < 300; ++i) {
    Vec p = v2(u(rng), u(rng)), q = v2(u(rng), u(rng));
    const double prod_pts = lie_product(point_to_lie(p), point_to_lie(q));
    CHECK(prod_pts ==
          doctest::Approx(-0.5 * (p - q).squaredNorm()).epsilon(1e-12).scale(1 + p.squaredNorm() + q.squaredNorm()));
    // dist(p,q)^2 = -2 <xi_p, xi_q>, the squared form of the distance table.
    CHECK((p - q).squaredNorm() ==
          doctest::Approx(-2.0 * prod_pts).epsilon(1e-12).scale(1 + (p - q).squaredNorm()));

    const double r1 = upos(rng), r2 = upos(rng);
    const double prod_sph = lie_product(sphere_to_lie(p, r1), sphere_to_lie(q, r2));
    CHECK(prod_sph == doctest::Approx(0.5 * ((r1 - r2) * (r1 - r2) - (p - q).squaredNorm()))
                          .epsilon(1e-12)
                          .scale(1 + p.squaredNorm() + q.squaredNorm()));

    // pow(p, S(q,r)) = -2 <sigma_{q,r}, xi_p>.
    const double pow_pq = (p - q).squaredNorm() - r2 * r2;
    CHECK(pow_pq == doctest::Approx(-2.0 * lie_product(sphere_to_lie(q, r2), point_to_lie(p)))
                        .epsilon(1e-12)
                        .scale(1 + std::abs(pow_pq)));

    // Mobius scalar product rho = <mobius_project(sigma_1), sigma_2>.
    const double rho = 0.5 * (r1 * r1 + r2 * r2 - (p - q).squaredNorm());
    CHECK(rho == doctest::Approx(lie_product(mobius_project(sphere_to_lie(p, r1).coords),
                                             sphere_to_lie(q, r2).coords))
                     .epsilon(1e-12)
                     .scale(1 + std::abs(rho)));

    // Signed distance to an oriented hyperplane, on the positive side.
    Vec n = v2(u(rng), u(rng));
    if (n.norm() == 0) continue;
    n /= n.norm();
    const double h = u(rng);
    if (n.dot(p) >= h)
      CHECK(n.dot(p) - h ==
            doctest::Approx(lie_product(point_to_lie(p), plane_to_lie({n, h}))).epsilon(1e-12));
  }
}
