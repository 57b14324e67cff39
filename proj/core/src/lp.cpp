#include <gvd/lp.hpp>

#include <algorithm>
#include <cmath>
#include <random>

namespace gvd {

namespace {

double viol_tol(const LpConstraint& c, const Vec& x) {
  return 1e-9 * (1.0 + std::abs(c.b) + c.a.cwiseAbs().dot(x.cwiseAbs()));
}

struct Problem {
  std::vector<LpConstraint> cons;
  Vec c, lo, hi;
};

Vec box_optimum(const Problem& p) {
  const auto n = p.c.size();
  Vec x(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (p.lo[i] > p.hi[i]) throw InfeasibleError("lp: empty variable box");
    x[i] = p.c[i] >= 0 ? p.hi[i] : p.lo[i];
  }
  return x;
}

Vec solve(Problem p, std::mt19937_64& rng) {
  const auto n = p.c.size();
  if (n == 1) {
    double lo = p.lo[0], hi = p.hi[0];
    for (const auto& cs : p.cons) {
      const double a = cs.a[0];
      if (std::abs(a) <= 1e-13 * (1.0 + std::abs(cs.b))) {
        if (cs.b < -1e-11 * (1.0 + std::abs(cs.b)))
          throw InfeasibleError("lp: contradictory constraint");
        continue;
      }
      if (a > 0)
        hi = std::min(hi, cs.b / a);
      else
        lo = std::max(lo, cs.b / a);
    }
    if (lo > hi + 1e-11 * (1.0 + std::abs(lo) + std::abs(hi)))
      throw InfeasibleError("lp: empty interval");
    Vec x(1);
    x[0] = p.c[0] >= 0 ? hi : lo;
    return x;
  }

  std::shuffle(p.cons.begin(), p.cons.end(), rng);
  Vec x = box_optimum(p);

  for (std::size_t i = 0; i < p.cons.size(); ++i) {
    const auto& cs = p.cons[i];
    if (cs.a.dot(x) <= cs.b + viol_tol(cs, x)) continue;

    // Optimum lies on cs.a . x = cs.b; eliminate the variable with the
    // largest coefficient and recurse on the constraints seen so far.
    Eigen::Index k;
    const double ak_abs = cs.a.cwiseAbs().maxCoeff(&k);
    if (ak_abs <= 1e-13 * (1.0 + std::abs(cs.b)))
      throw InfeasibleError("lp: contradictory constraint");
    const double ak = cs.a[k];

    auto drop = [&](const Vec& v) {
      Vec out(n - 1);
      out.head(k) = v.head(k);
      out.tail(n - 1 - k) = v.tail(n - 1 - k);
      return out;
    };
    auto substitute = [&](const Vec& pvec, double q) {
      LpConstraint r;
      r.a = drop(pvec) - (pvec[k] / ak) * drop(cs.a);
      r.b = q - pvec[k] * cs.b / ak;
      return r;
    };

    Problem sub;
    sub.cons.reserve(i + 2);
    for (std::size_t j = 0; j < i; ++j) sub.cons.push_back(substitute(p.cons[j].a, p.cons[j].b));
    {
      Vec ek = Vec::Zero(n);
      ek[k] = 1.0;
      sub.cons.push_back(substitute(ek, p.hi[k]));
      sub.cons.push_back(substitute(-ek, -p.lo[k]));
    }
    sub.c = drop(p.c) - (p.c[k] / ak) * drop(cs.a);
    sub.lo = drop(p.lo);
    sub.hi = drop(p.hi);

    Vec y = solve(std::move(sub), rng);
    Vec full(n);
    full.head(k) = y.head(k);
    full.tail(n - 1 - k) = y.tail(n - 1 - k);
    double xk = cs.b;
    for (Eigen::Index j = 0; j < n; ++j)
      if (j != k) xk -= cs.a[j] * full[j];
    full[k] = xk / ak;
    x = full;
  }
  return x;
}

}  // namespace

Vec seidel_lp(std::vector<LpConstraint> constraints, const Vec& objective,
              const Vec& lo, const Vec& hi, std::uint64_t seed) {
  if (lo.size() != objective.size() || hi.size() != objective.size())
    throw InvalidInputError("seidel_lp: size mismatch");
  for (const auto& c : constraints)
    if (c.a.size() != objective.size())
      throw InvalidInputError("seidel_lp: constraint size mismatch");
  std::mt19937_64 rng(seed ^ 0x5eede1u);
  Problem p{std::move(constraints), objective, lo, hi};
  return solve(std::move(p), rng);
}

}  // namespace gvd
