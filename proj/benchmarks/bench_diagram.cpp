// Scaling benchmarks for the two diagram engines and their main internal
// stages: dual convex hull, halfspace intersection, and the full pipeline.

#include <gvd/affine.hpp>
#include <gvd/hull.hpp>
#include <gvd/quadric.hpp>

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

namespace {

using namespace gvd;

Vec v2(double a, double b) {
  Vec v(2);
  v << a, b;
  return v;
}

std::vector<Vec> random_points(int n, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(-10, 10);
  std::vector<Vec> pts;
  pts.reserve(n);
  for (int i = 0; i < n; ++i) pts.push_back(v2(u(rng), u(rng)));
  return pts;
}

DataSet point_sites(const std::vector<Vec>& pts) {
  DataSet ds;
  ds.dimension = 2;
  for (std::size_t i = 0; i < pts.size(); ++i)
    ds.sites.push_back({PointOutsideSite{pts[i]}, static_cast<int>(i)});
  return ds;
}

void BM_convex_hull_4d(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::mt19937 rng(42);
  std::normal_distribution<double> g;
  std::vector<Vec> pts;
  for (int i = 0; i < n; ++i) {
    Vec p(4);
    for (int j = 0; j < 4; ++j) p[j] = g(rng);
    pts.push_back(p);
  }
  for (auto _ : state) benchmark::DoNotOptimize(convex_hull(pts, 1));
  state.SetComplexityN(n);
}
BENCHMARK(BM_convex_hull_4d)->RangeMultiplier(2)->Range(64, 1024)->Complexity();

void BM_halfspace_intersection(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const DataSet ds = point_sites(random_points(n, 7));
  const double B = choose_bounding_box(ds).B;
  const ReducedSystem sys =
      normalize_slice(assemble_system(ds, B), 2, sigma1_bound_for_box(2, B));
  const FeasiblePoint fp = feasible_point(sys, 3);
  for (auto _ : state) benchmark::DoNotOptimize(halfspace_intersection(sys, fp.point, 3));
  state.SetComplexityN(n);
}
BENCHMARK(BM_halfspace_intersection)->RangeMultiplier(2)->Range(64, 1024)->Complexity();

void BM_compute_diagram(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const DataSet ds = point_sites(random_points(n, 11));
  for (auto _ : state) benchmark::DoNotOptimize(compute_diagram(ds));
  state.SetComplexityN(n);
}
BENCHMARK(BM_compute_diagram)->RangeMultiplier(2)->Range(64, 1024)->Complexity();

void BM_minimization_diagram(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::vector<QuadraticFunction> fs;
  for (const Vec& p : random_points(n, 13)) {
    QuadraticFunction f;
    f.a = 1;
    f.q = p;
    f.b = Vec::Zero(2);
    fs.push_back(f);
  }
  const BoundingBox box = choose_bounding_box(fs);
  for (auto _ : state) benchmark::DoNotOptimize(minimization_diagram(fs, box, 1));
  state.SetComplexityN(n);
}
BENCHMARK(BM_minimization_diagram)->RangeMultiplier(2)->Range(32, 256)->Complexity();

}  // namespace

BENCHMARK_MAIN();
