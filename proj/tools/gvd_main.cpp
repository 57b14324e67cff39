// Command-line front end: compute diagrams from site/function files and emit
// JSON (optionally SVG); verify compares computed output against the
// brute-force oracle on a grid.
//
// Exit codes: 0 success, 1 input/usage error, 2 infeasible system.

#include <gvd/affine.hpp>
#include <gvd/io.hpp>
#include <gvd/oracle.hpp>
#include <gvd/quadric.hpp>

#include <CLI11.hpp>

#include <algorithm>
#include <iostream>

namespace {

struct Options {
  std::string input;
  std::string output;
  std::string svg;
  double margin = 4.0;
  std::uint64_t seed = 0;
  double eps = gvd::kPredTol;
  int order_k = 0;  // 0: take from the input file
  int grid = 200;
};

int run_compute(const Options& opt) {
  const gvd::JobInput in = gvd::parse_input_file(opt.input);
  gvd::RunMeta meta{opt.seed, opt.eps, opt.margin, 0.0};

  if (in.mode == gvd::JobMode::Extremal) {
    gvd::ComputeOptions copts{opt.margin, opt.seed, opt.eps};
    const gvd::GeneralizedDiagram dg = gvd::compute_diagram(in.dataset, copts);
    meta.box = dg.box.B;
    gvd::write_file(opt.output, gvd::diagram_to_json(dg, meta));
    if (!opt.svg.empty()) gvd::write_file(opt.svg, gvd::render_svg(dg));
  } else {
    const int k = opt.order_k > 0 ? opt.order_k : in.order_k;
    const gvd::BoundingBox box = gvd::choose_bounding_box(in.functions, opt.margin);
    const gvd::MinimizationDiagram md =
        gvd::order_k_diagram(in.functions, k, box, opt.seed);
    meta.box = box.B;
    gvd::write_file(opt.output, gvd::md_to_json(md, meta));
    if (!opt.svg.empty()) gvd::write_file(opt.svg, gvd::render_svg(md, box));
  }
  return 0;
}

int run_verify(const Options& opt) {
  const gvd::JobInput in = gvd::parse_input_file(opt.input);
  const int g = std::max(2, opt.grid);
  long mismatches = 0, checked = 0;

  if (in.mode == gvd::JobMode::Extremal) {
    gvd::ComputeOptions copts{opt.margin, opt.seed, opt.eps};
    const gvd::GeneralizedDiagram dg = gvd::compute_diagram(in.dataset, copts);
    const double B = dg.box.B;

    // Diagram vertices: oracle radius and tight set agree.
    for (const auto& v : dg.vertices) {
      ++checked;
      const auto iv = gvd::admissible_radius_interval(v.center, in.dataset);
      const double tol = 1e-6 * (1.0 + v.radius);
      const bool radius_ok =
          iv.feasible && (std::abs(iv.hi - v.radius) <= tol || std::abs(iv.lo - v.radius) <= tol);
      const auto lbl = gvd::oracle_label(v.center, in.dataset, 1e-6);
      const bool sites_ok = std::includes(lbl.begin(), lbl.end(), v.tight_sites.begin(),
                                          v.tight_sites.end());
      if (!radius_ok || !sites_ok) ++mismatches;
    }
    // Edge samples: every defining site stays active along the curve.
    for (const auto& e : dg.edges) {
      for (std::size_t i = 0; i < e.polyline.size(); i += 8) {
        ++checked;
        const auto lbl = gvd::oracle_label(e.polyline[i], in.dataset, 1e-5);
        if (!std::includes(lbl.begin(), lbl.end(), e.defining_sites.begin(),
                           e.defining_sites.end()))
          ++mismatches;
      }
    }
    // Grid: point location against the oracle.
    if (in.dimension == 2) {
      gvd::Vec x(2);
      for (int i = 0; i < g; ++i) {
        for (int j = 0; j < g; ++j) {
          x[0] = -B + 2.0 * B * (i + 0.5) / g;
          x[1] = -B + 2.0 * B * (j + 0.5) / g;
          ++checked;
          if (gvd::locate(x, in.dataset, opt.eps) != gvd::oracle_label(x, in.dataset, opt.eps))
            ++mismatches;
        }
      }
    }
  } else {
    const int k = opt.order_k > 0 ? opt.order_k : in.order_k;
    std::vector<std::vector<int>> index_sets;
    const auto family = gvd::order_k_family(in.functions, k, &index_sets);
    const gvd::BoundingBox box = gvd::choose_bounding_box(in.functions, opt.margin);
    const double B = box.B;
    gvd::Vec x(in.dimension);
    if (in.dimension == 2) {
      for (int i = 0; i < g; ++i) {
        for (int j = 0; j < g; ++j) {
          x[0] = -B + 2.0 * B * (i + 0.5) / g;
          x[1] = -B + 2.0 * B * (j + 0.5) / g;
          const auto fam_lbl = gvd::oracle_label_md(x, family, 1e-9);
          if (fam_lbl.size() != 1) continue;  // not margin robust
          // k smallest of the original family, by value.
          std::vector<std::pair<double, int>> vals;
          for (std::size_t t = 0; t < in.functions.size(); ++t)
            vals.emplace_back(in.functions[t].eval(x), static_cast<int>(t));
          std::sort(vals.begin(), vals.end());
          if (vals.size() > static_cast<std::size_t>(k) &&
              vals[k].first - vals[k - 1].first <= 1e-7 * (1.0 + std::abs(vals[k].first)))
            continue;  // tie at the cut, not margin robust
          std::vector<int> smallest;
          for (int t = 0; t < k; ++t) smallest.push_back(vals[t].second);
          std::sort(smallest.begin(), smallest.end());
          ++checked;
          if (smallest != index_sets[fam_lbl[0]]) ++mismatches;
        }
      }
    }
  }
  std::cout << "checked " << checked << " points, " << mismatches << " mismatches\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"generalized Voronoi diagrams via linear inequalities on the Lie quadric"};
  app.require_subcommand(1);
  Options opt;

  auto* compute = app.add_subcommand("compute", "compute a diagram and write JSON/SVG");
  compute->add_option("--input", opt.input, "input JSON file")->required();
  compute->add_option("--output", opt.output, "output JSON file")->required();
  compute->add_option("--svg", opt.svg, "optional SVG output (d = 2)");
  compute->add_option("--margin", opt.margin, "bounding box margin factor");
  compute->add_option("--seed", opt.seed, "random seed");
  compute->add_option("--eps", opt.eps, "predicate tolerance");
  compute->add_option("--order-k", opt.order_k, "order-k override (affine mode)");

  auto* verify = app.add_subcommand("verify", "compare a computed diagram with the oracle");
  verify->add_option("--input", opt.input, "input JSON file")->required();
  verify->add_option("--grid", opt.grid, "grid resolution per axis");
  verify->add_option("--margin", opt.margin, "bounding box margin factor");
  verify->add_option("--seed", opt.seed, "random seed");
  verify->add_option("--eps", opt.eps, "predicate tolerance");
  verify->add_option("--order-k", opt.order_k, "order-k override (affine mode)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand(compute)) return run_compute(opt);
    return run_verify(opt);
  } catch (const gvd::InfeasibleError& e) {
    std::cerr << "empty sphere family: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
