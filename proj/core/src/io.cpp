#include <gvd/io.hpp>

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

namespace gvd {

namespace {

using nlohmann::json;

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string num_list(const Vec& v) {
  std::string out = "[";
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += num(v[i]);
  }
  return out + "]";
}

std::string int_list(const std::vector<int>& v) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(v[i]);
  }
  return out + "]";
}

Vec vec_field(const json& j, const char* field, int expect_len, const std::string& where) {
  if (!j.contains(field) || !j[field].is_array())
    throw InvalidInputError(where + ": missing or non-array field '" + field + "'");
  const auto& arr = j[field];
  if (expect_len >= 0 && static_cast<int>(arr.size()) != expect_len)
    throw InvalidInputError(where + ": field '" + field + "' must have length " +
                            std::to_string(expect_len));
  Vec v(arr.size());
  for (std::size_t i = 0; i < arr.size(); ++i) {
    if (!arr[i].is_number())
      throw InvalidInputError(where + ": field '" + field + "' has a non-numeric entry");
    v[i] = arr[i].get<double>();
  }
  return v;
}

double num_field(const json& j, const char* field, const std::string& where) {
  if (!j.contains(field) || !j[field].is_number())
    throw InvalidInputError(where + ": missing or non-numeric field '" + field + "'");
  return j[field].get<double>();
}

void append_meta(std::string& out, const RunMeta& meta) {
  out += "\"meta\":{\"seed\":" + std::to_string(meta.seed) +
         ",\"epsilons\":{\"pred\":" + num(meta.eps) + ",\"feas\":" + num(kFeasTol) +
         "},\"margin\":" + num(meta.margin) + ",\"box\":" + num(meta.box) + "}";
}

}  // namespace

JobInput parse_input_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw InvalidInputError(std::string("input: invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw InvalidInputError("input: top level must be an object");
  JobInput in;
  if (!j.contains("dimension") || !j["dimension"].is_number_integer())
    throw InvalidInputError("input: missing integer field 'dimension'");
  in.dimension = j["dimension"].get<int>();
  if (in.dimension < 2) throw InvalidInputError("input: 'dimension' must be >= 2");
  const std::string mode = j.value("mode", std::string("extremal"));
  if (mode == "extremal")
    in.mode = JobMode::Extremal;
  else if (mode == "affine")
    in.mode = JobMode::Affine;
  else
    throw InvalidInputError("input: 'mode' must be \"extremal\" or \"affine\"");

  const int d = in.dimension;
  if (in.mode == JobMode::Extremal) {
    if (!j.contains("sites") || !j["sites"].is_array())
      throw InvalidInputError("input: missing array field 'sites'");
    in.dataset.dimension = d;
    int id = 0;
    for (const auto& js : j["sites"]) {
      const std::string where = "sites[" + std::to_string(id) + "]";
      if (!js.is_object() || !js.contains("type") || !js["type"].is_string())
        throw InvalidInputError(where + ": missing string field 'type'");
      const std::string type = js["type"].get<std::string>();
      Site s;
      s.id = id;
      if (type == "point_outside" || type == "point_inside") {
        const Vec p = vec_field(js, "coords", d, where);
        if (type == "point_outside")
          s.shape = PointOutsideSite{p};
        else
          s.shape = PointInsideSite{p};
      } else if (type == "halfspace") {
        OrientedPlane h;
        h.normal = vec_field(js, "normal", d, where);
        h.height = num_field(js, "height", where);
        s.shape = HalfSpaceSite{h};
      } else if (type == "sphere_power" || type == "sphere_exterior") {
        const Vec c = vec_field(js, "center", d, where);
        const double r = num_field(js, "radius", where);
        if (!(r > 0.0)) throw InvalidInputError(where + ": 'radius' must be > 0");
        if (type == "sphere_power")
          s.shape = PowerSphereSite{c, r};
        else
          s.shape = ExteriorSphereSite{c, r};
      } else {
        throw InvalidInputError(where + ": unknown site type '" + type + "'");
      }
      s.validate();
      in.dataset.sites.push_back(std::move(s));
      ++id;
    }
    in.dataset.validate();
  } else {
    if (!j.contains("functions") || !j["functions"].is_array())
      throw InvalidInputError("input: missing array field 'functions'");
    in.order_k = j.value("order_k", 1);
    if (in.order_k < 1) throw InvalidInputError("input: 'order_k' must be >= 1");
    int idx = 0;
    for (const auto& jf : j["functions"]) {
      const std::string where = "functions[" + std::to_string(idx) + "]";
      QuadraticFunction f;
      f.a = num_field(jf, "a", where);
      f.q = vec_field(jf, "q", d, where);
      f.b = vec_field(jf, "b", d, where);
      f.c = num_field(jf, "c", where);
      in.functions.push_back(std::move(f));
      ++idx;
    }
    if (in.functions.size() < 2)
      throw InvalidInputError("input: 'functions' needs at least 2 entries");
    if (in.order_k > static_cast<int>(in.functions.size()))
      throw InvalidInputError("input: 'order_k' exceeds the number of functions");
  }
  return in;
}

JobInput parse_input_file(const std::string& path) { return parse_input_text(read_file(path)); }

std::string diagram_to_json(const GeneralizedDiagram& dg, const RunMeta& meta) {
  std::string out = "{\"vertices\":[";
  for (std::size_t i = 0; i < dg.vertices.size(); ++i) {
    const auto& v = dg.vertices[i];
    if (i) out += ",";
    out += "{\"id\":" + std::to_string(i) + ",\"center\":" + num_list(v.center) +
           ",\"radius\":" + num(v.radius) + ",\"tight_sites\":" + int_list(v.tight_sites) + "}";
  }
  out += "],\"edges\":[";
  for (std::size_t i = 0; i < dg.edges.size(); ++i) {
    const auto& e = dg.edges[i];
    if (i) out += ",";
    out += "{\"v0\":";
    out += (e.closed || e.v0 == kBoxBoundary) ? "\"boundary\"" : std::to_string(e.v0);
    out += ",\"v1\":";
    out += (e.closed || e.v1 == kBoxBoundary) ? "\"boundary\"" : std::to_string(e.v1);
    out += ",\"closed\":";
    out += e.closed ? "true" : "false";
    out += ",\"sites\":" + int_list(e.defining_sites) + ",\"polyline\":[";
    for (std::size_t p = 0; p < e.polyline.size(); ++p) {
      if (p) out += ",";
      out += num_list(e.polyline[p]);
    }
    out += "]}";
  }
  out += "],";
  append_meta(out, meta);
  out += "}";
  return out;
}

std::string md_to_json(const MinimizationDiagram& md, const RunMeta& meta) {
  std::string out = "{\"order_k\":" + std::to_string(md.order_k) + ",\"index_sets\":[";
  for (std::size_t i = 0; i < md.index_sets.size(); ++i) {
    if (i) out += ",";
    out += int_list(md.index_sets[i]);
  }
  out += "],\"vertices\":[";
  for (std::size_t i = 0; i < md.vertices.size(); ++i) {
    const auto& v = md.vertices[i];
    if (i) out += ",";
    out += "{\"id\":" + std::to_string(i) + ",\"point\":" + num_list(v.point) +
           ",\"min_indices\":" + int_list(v.min_indices) + "}";
  }
  out += "],\"edges\":[";
  for (std::size_t i = 0; i < md.edges.size(); ++i) {
    const auto& e = md.edges[i];
    if (i) out += ",";
    out += "{\"v0\":";
    out += (e.closed || e.v0 == kBoxBoundary) ? "\"boundary\"" : std::to_string(e.v0);
    out += ",\"v1\":";
    out += (e.closed || e.v1 == kBoxBoundary) ? "\"boundary\"" : std::to_string(e.v1);
    out += ",\"closed\":";
    out += e.closed ? "true" : "false";
    out += ",\"indices\":" + int_list(e.pair) + ",\"polyline\":[";
    for (std::size_t p = 0; p < e.polyline.size(); ++p) {
      if (p) out += ",";
      out += num_list(e.polyline[p]);
    }
    out += "]}";
  }
  out += "],\"cells\":[";
  for (std::size_t i = 0; i < md.cells.size(); ++i) {
    const auto& c = md.cells[i];
    if (i) out += ",";
    out += "{\"label\":" + int_list(md.index_sets[c.function_index]) +
           ",\"representative\":" + num_list(c.representative) + "}";
  }
  out += "],";
  append_meta(out, meta);
  out += "}";
  return out;
}

GeneralizedDiagram diagram_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw InvalidInputError(std::string("diagram: invalid JSON: ") + e.what());
  }
  GeneralizedDiagram dg;
  for (const auto& jv : j.at("vertices")) {
    DiagramVertex v;
    v.center = vec_field(jv, "center", -1, "vertices");
    v.radius = num_field(jv, "radius", "vertices");
    for (const auto& t : jv.at("tight_sites")) v.tight_sites.push_back(t.get<int>());
    dg.vertices.push_back(std::move(v));
  }
  dg.dimension = dg.vertices.empty() ? 2 : static_cast<int>(dg.vertices[0].center.size());
  for (const auto& je : j.at("edges")) {
    DiagramEdge e;
    e.closed = je.value("closed", false);
    e.v0 = je.at("v0").is_number() ? je["v0"].get<int>() : kBoxBoundary;
    e.v1 = je.at("v1").is_number() ? je["v1"].get<int>() : kBoxBoundary;
    for (const auto& s : je.at("sites")) e.defining_sites.push_back(s.get<int>());
    for (const auto& p : je.at("polyline")) {
      Vec pt(p.size());
      for (std::size_t i = 0; i < p.size(); ++i) pt[i] = p[i].get<double>();
      e.polyline.push_back(std::move(pt));
      dg.dimension = static_cast<int>(p.size());
    }
    dg.edges.push_back(std::move(e));
  }
  if (j.contains("meta") && j["meta"].contains("box"))
    dg.box.B = j["meta"]["box"].get<double>();
  return dg;
}

namespace {

std::string svg_header(double B) {
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"800\" viewBox=\""
     << num(-B) << " " << num(-B) << " " << num(2 * B) << " " << num(2 * B)
     << "\">\n<g transform=\"scale(1,-1)\">\n";
  return os.str();
}

std::string svg_polyline(const std::vector<Vec>& pts, bool closed, double B) {
  std::ostringstream os;
  os << (closed ? "<polygon" : "<polyline") << " class=\"edge\" fill=\"none\" stroke=\"#1f6fb2\""
     << " stroke-width=\"" << num(B / 200.0) << "\" points=\"";
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (i) os << " ";
    os << num(pts[i][0]) << "," << num(pts[i][1]);
  }
  os << "\"/>\n";
  return os.str();
}

std::string svg_dot(const Vec& p, double r, const char* cls, const char* color) {
  std::ostringstream os;
  os << "<circle class=\"" << cls << "\" cx=\"" << num(p[0]) << "\" cy=\"" << num(p[1])
     << "\" r=\"" << num(r) << "\" fill=\"" << color << "\"/>\n";
  return os.str();
}

}  // namespace

std::string render_svg(const GeneralizedDiagram& dg) {
  if (dg.dimension != 2) throw InvalidInputError("render_svg: only d = 2 is supported");
  const double B = dg.box.B;
  std::string out = svg_header(B);
  for (const auto& e : dg.edges) out += svg_polyline(e.polyline, e.closed, B);
  for (const auto& s : dg.sites.sites) {
    std::visit(
        [&](const auto& site) {
          using T = std::decay_t<decltype(site)>;
          if constexpr (std::is_same_v<T, PointOutsideSite> || std::is_same_v<T, PointInsideSite>) {
            out += svg_dot(site.point, B / 120.0, "site-point", "#222222");
          } else if constexpr (std::is_same_v<T, HalfSpaceSite>) {
            const Vec& n = site.plane.normal;
            Vec base = site.plane.height * n;
            Vec dir(2);
            dir << -n[1], n[0];
            out += svg_polyline({base - 2.0 * B * dir, base + 2.0 * B * dir}, false, B);
          } else {
            std::ostringstream os;
            os << "<circle class=\"site-circle\" cx=\"" << num(site.center[0]) << "\" cy=\""
               << num(site.center[1]) << "\" r=\"" << num(site.radius)
               << "\" fill=\"none\" stroke=\"#444444\" stroke-width=\"" << num(B / 300.0)
               << "\"/>\n";
            out += os.str();
          }
        },
        s.shape);
  }
  for (const auto& v : dg.vertices) out += svg_dot(v.center, B / 90.0, "vertex", "#c23b22");
  out += "</g>\n</svg>\n";
  return out;
}

std::string render_svg(const MinimizationDiagram& md, const BoundingBox& box) {
  if (md.dimension != 2) throw InvalidInputError("render_svg: only d = 2 is supported");
  const double B = box.B;
  std::string out = svg_header(B);
  for (const auto& e : md.edges) out += svg_polyline(e.polyline, e.closed, B);
  for (const auto& v : md.vertices) out += svg_dot(v.point, B / 90.0, "vertex", "#c23b22");
  out += "</g>\n</svg>\n";
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInputError("cannot open file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInputError("cannot write file: " + path);
  out << content;
}

}  // namespace gvd
