#pragma once

// Input parsing (site and function files), deterministic JSON emission of
// diagrams, and SVG rendering for d = 2.

#include <gvd/affine.hpp>
#include <gvd/quadric.hpp>

#include <string>

namespace gvd {

enum class JobMode { Extremal, Affine };

struct JobInput {
  JobMode mode = JobMode::Extremal;
  int dimension = 2;
  DataSet dataset;                         // extremal mode
  std::vector<QuadraticFunction> functions; // affine mode
  int order_k = 1;
};

// Schema errors name the offending field and element index.
JobInput parse_input_text(const std::string& json_text);
JobInput parse_input_file(const std::string& path);

struct RunMeta {
  std::uint64_t seed = 0;
  double eps = kPredTol;
  double margin = 4.0;
  double box = 0.0;
};

// Deterministic emitters: fixed key order, 17 significant digits, no locale
// dependence.  Repeated runs with the same inputs produce identical bytes.
std::string diagram_to_json(const GeneralizedDiagram& dg, const RunMeta& meta);
std::string md_to_json(const MinimizationDiagram& md, const RunMeta& meta);

// Inverse of diagram_to_json for the fields it emits.
GeneralizedDiagram diagram_from_json(const std::string& text);

// d = 2 only; throws InvalidInputError otherwise.
std::string render_svg(const GeneralizedDiagram& dg);
std::string render_svg(const MinimizationDiagram& md, const BoundingBox& box);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace gvd
