// JSON documents (instances, assignments, solutions, role maps, formulas and
// graphs), the SHA-256 instance digest that pairs them, verification and SVG
// rendering.
#ifndef RECT_ESCAPE_IO_HPP_
#define RECT_ESCAPE_IO_HPP_

#include <openssl/sha.h>

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "rect_escape/approx.hpp"
#include "rect_escape/boxes.hpp"
#include "rect_escape/exact.hpp"
#include "rect_escape/geometry.hpp"
#include "rect_escape/reductions.hpp"
#include "rect_escape/squares.hpp"

namespace rect_escape {

using json = nlohmann::json;

inline constexpr int kFormatVersion = 1;

using AnyInstance = std::variant<Instance, GridInstance, Instance3>;

namespace detail {

[[noreturn]] inline void bad_doc(const std::string& what) {
  throw EscapeError(ErrorKind::kValidation, what);
}

inline void only_keys(const json& obj, std::initializer_list<const char*> allowed,
                      const std::string& where) {
  if (!obj.is_object()) bad_doc(where + " must be an object");
  for (const auto& [key, value] : obj.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || key == a;
    if (!ok) bad_doc("unknown field \"" + key + "\" in " + where);
  }
}

inline const json& field(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) bad_doc("missing field \"" + std::string(key) + "\" in " + where);
  return *it;
}

inline Coord get_int(const json& obj, const char* key, const std::string& where) {
  const json& v = field(obj, key, where);
  if (!v.is_number_integer()) bad_doc("field \"" + std::string(key) + "\" must be an integer");
  return v.get<Coord>();
}

inline std::optional<int> get_opt_int(const json& obj, const char* key,
                                      const std::string& where) {
  if (!obj.contains(key)) return std::nullopt;
  return static_cast<int>(get_int(obj, key, where));
}

template <std::size_t N>
std::array<Coord, N> get_point(const json& obj, const char* key, const std::string& where) {
  const json& v = field(obj, key, where);
  if (!v.is_array() || v.size() != N) {
    bad_doc("field \"" + std::string(key) + "\" must be a " + std::to_string(N) + "-array");
  }
  std::array<Coord, N> out{};
  for (std::size_t i = 0; i < N; ++i) {
    if (!v[i].is_number_integer()) bad_doc("coordinates must be integers");
    out[i] = v[i].get<Coord>();
  }
  return out;
}

inline void check_header(const json& doc, const std::string& kind) {
  if (!doc.is_object()) bad_doc("document must be a JSON object");
  const json& f = field(doc, "format", "document");
  if (!f.is_number_integer() || f.get<int>() != kFormatVersion) {
    bad_doc("unsupported format version");
  }
  const json& k = field(doc, "kind", "document");
  if (!k.is_string() || k.get<std::string>() != kind) {
    bad_doc("expected a \"" + kind + "\" document");
  }
}

inline void put_targets(json& doc, int d, const std::optional<int>& k,
                        const std::optional<int>& p = {}, const std::optional<int>& q = {}) {
  doc["d"] = d;
  if (k) doc["k"] = *k;
  if (p) doc["p"] = *p;
  if (q) doc["q"] = *q;
}

}  // namespace detail

// ------------------------------------------------------------- instances

inline json to_json(const Instance& inst) {
  json doc = {{"format", kFormatVersion}, {"kind", "rect"}};
  doc["region"] = {{"min", {inst.region.x_min, inst.region.y_min}},
                   {"max", {inst.region.x_max, inst.region.y_max}}};
  json rects = json::array();
  for (const Rect& r : inst.rects) {
    rects.push_back({{"id", r.id}, {"min", {r.x_min, r.y_min}}, {"max", {r.x_max, r.y_max}}});
  }
  doc["rects"] = std::move(rects);
  detail::put_targets(doc, inst.d, inst.k, inst.p, inst.q);
  return doc;
}

inline json to_json(const GridInstance& g) {
  json doc = {{"format", kFormatVersion}, {"kind", "grid"}, {"m", g.m}};
  json squares = json::array();
  for (const GridSquare& s : g.squares) {
    squares.push_back({{"id", s.id}, {"row", s.row}, {"col", s.col}});
  }
  doc["squares"] = std::move(squares);
  detail::put_targets(doc, g.d, g.k);
  return doc;
}

inline json to_json(const Instance3& inst) {
  json doc = {{"format", kFormatVersion}, {"kind", "box3"}};
  doc["region"] = {{"min", inst.region.lo}, {"max", inst.region.hi}};
  json boxes = json::array();
  for (const Box3& b : inst.boxes) {
    boxes.push_back({{"id", b.id}, {"min", b.lo}, {"max", b.hi}});
  }
  doc["boxes"] = std::move(boxes);
  detail::put_targets(doc, inst.d, inst.k);
  return doc;
}

inline json to_json(const AnyInstance& any) {
  return std::visit([](const auto& inst) { return to_json(inst); }, any);
}

inline AnyInstance instance_from_json(const json& doc) {
  if (!doc.is_object()) detail::bad_doc("document must be a JSON object");
  const json& kind = detail::field(doc, "kind", "document");
  if (!kind.is_string()) detail::bad_doc("\"kind\" must be a string");
  const std::string k = kind.get<std::string>();
  detail::check_header(doc, k);
  if (k == "rect") {
    detail::only_keys(doc, {"format", "kind", "region", "rects", "d", "k", "p", "q"}, "rect document");
    Instance inst;
    const json& region = detail::field(doc, "region", "rect document");
    detail::only_keys(region, {"min", "max"}, "region");
    const auto lo = detail::get_point<2>(region, "min", "region");
    const auto hi = detail::get_point<2>(region, "max", "region");
    inst.region = {lo[0], lo[1], hi[0], hi[1]};
    const json& rects = detail::field(doc, "rects", "rect document");
    if (!rects.is_array()) detail::bad_doc("\"rects\" must be an array");
    for (const json& r : rects) {
      detail::only_keys(r, {"id", "min", "max"}, "rect");
      const auto a = detail::get_point<2>(r, "min", "rect");
      const auto b = detail::get_point<2>(r, "max", "rect");
      inst.rects.push_back({detail::get_int(r, "id", "rect"), a[0], a[1], b[0], b[1]});
    }
    inst.d = static_cast<int>(detail::get_int(doc, "d", "rect document"));
    inst.k = detail::get_opt_int(doc, "k", "rect document");
    inst.p = detail::get_opt_int(doc, "p", "rect document");
    inst.q = detail::get_opt_int(doc, "q", "rect document");
    validate(inst);
    return inst;
  }
  if (k == "grid") {
    detail::only_keys(doc, {"format", "kind", "m", "squares", "d", "k"}, "grid document");
    GridInstance g;
    g.m = static_cast<int>(detail::get_int(doc, "m", "grid document"));
    const json& squares = detail::field(doc, "squares", "grid document");
    if (!squares.is_array()) detail::bad_doc("\"squares\" must be an array");
    for (const json& s : squares) {
      detail::only_keys(s, {"id", "row", "col"}, "square");
      g.squares.push_back({detail::get_int(s, "id", "square"),
                           static_cast<int>(detail::get_int(s, "row", "square")),
                           static_cast<int>(detail::get_int(s, "col", "square"))});
    }
    g.d = static_cast<int>(detail::get_int(doc, "d", "grid document"));
    g.k = detail::get_opt_int(doc, "k", "grid document");
    validate(g);
    return g;
  }
  if (k == "box3") {
    detail::only_keys(doc, {"format", "kind", "region", "boxes", "d", "k"}, "box3 document");
    Instance3 inst;
    const json& region = detail::field(doc, "region", "box3 document");
    detail::only_keys(region, {"min", "max"}, "region");
    inst.region.lo = detail::get_point<3>(region, "min", "region");
    inst.region.hi = detail::get_point<3>(region, "max", "region");
    const json& boxes = detail::field(doc, "boxes", "box3 document");
    if (!boxes.is_array()) detail::bad_doc("\"boxes\" must be an array");
    for (const json& b : boxes) {
      detail::only_keys(b, {"id", "min", "max"}, "box");
      inst.boxes.push_back({detail::get_int(b, "id", "box"), detail::get_point<3>(b, "min", "box"),
                            detail::get_point<3>(b, "max", "box")});
    }
    inst.d = static_cast<int>(detail::get_int(doc, "d", "box3 document"));
    inst.k = detail::get_opt_int(doc, "k", "box3 document");
    validate(inst);
    return inst;
  }
  detail::bad_doc("unknown instance kind \"" + k + "\"");
}

inline std::string sha256_hex(const std::string& bytes) {
  unsigned char md[SHA256_DIGEST_LENGTH];
  SHA256(reinterpret_cast<const unsigned char*>(bytes.data()), bytes.size(), md);
  std::ostringstream out;
  for (unsigned char c : md) out << std::hex << std::setw(2) << std::setfill('0') << int(c);
  return out.str();
}

// Hash of the compact serialization; object keys are sorted, so equal
// instances give equal digests.
inline std::string instance_digest(const AnyInstance& inst) {
  return sha256_hex(to_json(inst).dump());
}

// ---------------------------------------------------------- assignments

inline json assignment_to_json(const Assignment& a) {
  json out = json::array();
  for (const auto& [id, c] : a) out.push_back({{"id", id}, {"dir", c ? to_string(*c) : "none"}});
  return out;
}

inline json assignment_to_json(const Assignment3& a) {
  json out = json::array();
  for (const auto& [id, c] : a) out.push_back({{"id", id}, {"dir", c ? to_string(*c) : "none"}});
  return out;
}

namespace detail {

template <typename Dir, typename Parse>
std::map<Id, std::optional<Dir>> parse_entries(const json& arr, Parse&& parse) {
  if (!arr.is_array()) bad_doc("\"assignment\" must be an array");
  std::map<Id, std::optional<Dir>> out;
  for (const json& e : arr) {
    only_keys(e, {"id", "dir"}, "assignment entry");
    const Id id = get_int(e, "id", "assignment entry");
    const json& dir = field(e, "dir", "assignment entry");
    if (!dir.is_string()) bad_doc("\"dir\" must be a string");
    const std::string s = dir.get<std::string>();
    std::optional<Dir> c;
    if (s != "none") {
      c = parse(s);
      if (!c) bad_doc("unknown direction \"" + s + "\"");
    }
    if (!out.emplace(id, c).second) bad_doc("id " + std::to_string(id) + " assigned twice");
  }
  return out;
}

}  // namespace detail

inline Assignment assignment_from_json(const json& arr) {
  return detail::parse_entries<Direction>(arr, [](const std::string& s) { return parse_direction(s); });
}

inline Assignment3 assignment3_from_json(const json& arr) {
  return detail::parse_entries<Direction3>(arr,
                                           [](const std::string& s) { return parse_direction3(s); });
}

inline json assignment_document(const AnyInstance& inst, const json& entries) {
  return {{"format", kFormatVersion},
          {"kind", "assignment"},
          {"instance_digest", instance_digest(inst)},
          {"assignment", entries}};
}

// -------------------------------------------------------------- roles

inline json roles_document(const AnyInstance& inst, const RoleMap& roles,
                           const std::vector<std::string>& notes) {
  json entries = json::array();
  for (const auto& [id, role] : roles) entries.push_back({{"id", id}, {"role", role}});
  return {{"format", kFormatVersion},
          {"kind", "roles"},
          {"instance_digest", instance_digest(inst)},
          {"roles", std::move(entries)},
          {"notes", notes}};
}

inline RoleMap roles_from_json(const json& doc) {
  detail::check_header(doc, "roles");
  detail::only_keys(doc, {"format", "kind", "instance_digest", "roles", "notes"}, "roles document");
  RoleMap out;
  const json& arr = detail::field(doc, "roles", "roles document");
  if (!arr.is_array()) detail::bad_doc("\"roles\" must be an array");
  for (const json& e : arr) {
    detail::only_keys(e, {"id", "role"}, "role entry");
    const json& r = detail::field(e, "role", "role entry");
    if (!r.is_string()) detail::bad_doc("\"role\" must be a string");
    out[detail::get_int(e, "id", "role entry")] = r.get<std::string>();
  }
  return out;
}

// ---------------------------------------------------- formulas and graphs

inline json to_json(const NaeFormula& phi) {
  return {{"format", kFormatVersion}, {"kind", "nae-formula"},
          {"num_vars", phi.num_vars}, {"clauses", phi.clauses}};
}

inline NaeFormula formula_from_json(const json& doc) {
  detail::check_header(doc, "nae-formula");
  detail::only_keys(doc, {"format", "kind", "num_vars", "clauses"}, "formula document");
  NaeFormula phi;
  phi.num_vars = static_cast<int>(detail::get_int(doc, "num_vars", "formula document"));
  const json& cl = detail::field(doc, "clauses", "formula document");
  try {
    phi.clauses = cl.get<std::vector<std::vector<int>>>();
  } catch (const json::exception&) {
    detail::bad_doc("\"clauses\" must be a list of integer lists");
  }
  validate(phi);
  return phi;
}

inline json to_json(const MccGraph& g) {
  json edges = json::array();
  for (auto [u, v] : g.edges) edges.push_back({u, v});
  return {{"format", kFormatVersion}, {"kind", "mcc-graph"}, {"k", g.k}, {"t", g.t},
          {"parts", g.parts}, {"edges", std::move(edges)}};
}

inline MccGraph graph_from_json(const json& doc) {
  detail::check_header(doc, "mcc-graph");
  detail::only_keys(doc, {"format", "kind", "k", "t", "parts", "edges"}, "graph document");
  MccGraph g;
  g.k = static_cast<int>(detail::get_int(doc, "k", "graph document"));
  g.t = static_cast<int>(detail::get_int(doc, "t", "graph document"));
  try {
    g.parts = detail::field(doc, "parts", "graph document").get<std::vector<std::vector<int>>>();
    for (const json& e : detail::field(doc, "edges", "graph document")) {
      const auto pair = e.get<std::vector<int>>();
      if (pair.size() != 2) detail::bad_doc("edges must be vertex pairs");
      g.edges.emplace_back(pair[0], pair[1]);
    }
  } catch (const json::exception&) {
    detail::bad_doc("\"parts\"/\"edges\" must be integer lists");
  }
  validate(g);
  return g;
}

// ------------------------------------------------------------ verification

struct VerifyReport {
  bool pass = false;
  int d = 0;
  int max_density = 0;
  std::vector<Coord> witness;
  int extended = 0;
  std::map<std::string, int> tallies;  // per direction, split internal/boundary for rects
};

// Accepts an "assignment" document or a "solution" document; both carry the
// digest of the instance they were computed for.
inline VerifyReport verify(const AnyInstance& inst, const json& doc) {
  if (!doc.is_object()) detail::bad_doc("assignment document must be an object");
  const json& kind = detail::field(doc, "kind", "document");
  if (!kind.is_string() ||
      (kind.get<std::string>() != "assignment" && kind.get<std::string>() != "solution")) {
    detail::bad_doc("expected an assignment or solution document");
  }
  detail::check_header(doc, kind.get<std::string>());
  const json& digest = detail::field(doc, "instance_digest", "document");
  if (!digest.is_string() || digest.get<std::string>() != instance_digest(inst)) {
    throw EscapeError(ErrorKind::kPairing, "instance digest does not match");
  }
  const json& entries = detail::field(doc, "assignment", "document");
  VerifyReport rep;
  if (const auto* r = std::get_if<Instance>(&inst)) {
    const Assignment a = assignment_from_json(entries);
    const DensityReport dr = max_density(apply_assignment(*r, a));
    rep.d = r->d;
    rep.max_density = dr.max_density;
    if (dr.witness) rep.witness = {dr.witness->first, dr.witness->second};
    rep.extended = extended_count(a);
    std::map<Id, const Rect*> by_id;
    for (const Rect& x : r->rects) by_id[x.id] = &x;
    for (const auto& [id, c] : a) {
      if (!c) continue;
      const std::string side = is_internal(*by_id.at(id), r->region) ? "internal" : "boundary";
      ++rep.tallies[side + "_" + to_string(*c)];
      ++rep.tallies[side + "_" + (axis_of(*c) == Axis::kHorizontal ? "horizontal" : "vertical")];
    }
  } else if (const auto* g = std::get_if<GridInstance>(&inst)) {
    const Assignment a = assignment_from_json(entries);
    const DensityReport dr = grid_density(*g, a);
    rep.d = g->d;
    rep.max_density = dr.max_density;
    if (dr.witness) rep.witness = {dr.witness->first, dr.witness->second};
    rep.extended = extended_count(a);
    for (const auto& [id, c] : a) {
      if (c) ++rep.tallies[to_string(*c)];
    }
  } else {
    const auto& b = std::get<Instance3>(inst);
    const Assignment3 a = assignment3_from_json(entries);
    const DensityReport3 dr = density_of(b, a);
    rep.d = b.d;
    rep.max_density = dr.max_density;
    if (dr.witness) rep.witness.assign(dr.witness->begin(), dr.witness->end());
    rep.extended = extended_count(a);
    for (const auto& [id, c] : a) {
      if (c) ++rep.tallies[to_string(*c)];
    }
  }
  rep.pass = rep.max_density <= rep.d;
  return rep;
}

inline json to_json(const VerifyReport& rep) {
  json doc = {{"format", kFormatVersion}, {"kind", "verify-report"}, {"pass", rep.pass},
              {"d", rep.d}, {"max_density", rep.max_density}, {"extended_count", rep.extended},
              {"tallies", rep.tallies}};
  doc["witness"] = rep.witness.empty() ? json(nullptr) : json(rep.witness);
  return doc;
}

// ---------------------------------------------------------------- files

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw EscapeError(ErrorKind::kValidation, "cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw EscapeError(ErrorKind::kValidation, path + ": " + e.what());
  }
}

// Two-space indentation and a trailing newline.
inline std::string dump_document(const json& doc) { return doc.dump(2) + "\n"; }

inline void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::fwrite(text.data(), 1, text.size(), stdout);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw EscapeError(ErrorKind::kValidation, "cannot write " + path);
  out << text;
}

// ------------------------------------------------------------------ SVG

namespace detail {

struct SvgItem {
  Id id;
  Coord x0, y0, x1, y1;
  std::optional<std::array<Coord, 4>> ext;  // extended body, drawn first
};

inline std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace detail

// One unit is drawn as `scale` pixels with y pointing up. Extensions are
// hatched under the filled bodies; items whose role starts with "guard" are
// tinted grey, and role labels are printed when a role map is given. Boxes
// are drawn as their footprints on the xy plane.
inline std::string render_svg(const AnyInstance& inst, const json* assignment_doc,
                              const RoleMap& roles, int scale = 12) {
  std::vector<detail::SvgItem> items;
  Coord rx0 = 0, ry0 = 0, rx1 = 1, ry1 = 1;
  std::map<Id, std::string> dirs;
  if (const auto* r = std::get_if<Instance>(&inst)) {
    rx0 = r->region.x_min, ry0 = r->region.y_min, rx1 = r->region.x_max, ry1 = r->region.y_max;
    Assignment a;
    if (assignment_doc) a = assignment_from_json(detail::field(*assignment_doc, "assignment", "document"));
    for (const Rect& x : r->rects) {
      detail::SvgItem it{x.id, x.x_min, x.y_min, x.x_max, x.y_max, std::nullopt};
      if (auto f = a.find(x.id); f != a.end() && f->second) {
        const Rect e = extend(x, r->region, *f->second);
        it.ext = std::array<Coord, 4>{e.x_min, e.y_min, e.x_max, e.y_max};
        dirs[x.id] = to_string(*f->second);
      }
      items.push_back(it);
    }
  } else if (const auto* g = std::get_if<GridInstance>(&inst)) {
    rx0 = 1, ry0 = 1, rx1 = g->m + 1, ry1 = g->m + 1;
    const Instance view = to_rect_instance(*g);
    Assignment a;
    if (assignment_doc) a = assignment_from_json(detail::field(*assignment_doc, "assignment", "document"));
    for (const Rect& x : view.rects) {
      detail::SvgItem it{x.id, x.x_min, x.y_min, x.x_max, x.y_max, std::nullopt};
      if (auto f = a.find(x.id); f != a.end() && f->second) {
        const Rect e = extend(x, view.region, *f->second);
        it.ext = std::array<Coord, 4>{e.x_min, e.y_min, e.x_max, e.y_max};
        dirs[x.id] = to_string(*f->second);
      }
      items.push_back(it);
    }
  } else {
    const auto& b = std::get<Instance3>(inst);
    rx0 = b.region.lo[0], ry0 = b.region.lo[1], rx1 = b.region.hi[0], ry1 = b.region.hi[1];
    Assignment3 a;
    if (assignment_doc) a = assignment3_from_json(detail::field(*assignment_doc, "assignment", "document"));
    for (const Box3& x : b.boxes) {
      detail::SvgItem it{x.id, x.lo[0], x.lo[1], x.hi[0], x.hi[1], std::nullopt};
      if (auto f = a.find(x.id); f != a.end() && f->second) {
        const Box3 e = extend(x, b.region, *f->second);
        it.ext = std::array<Coord, 4>{e.lo[0], e.lo[1], e.hi[0], e.hi[1]};
        dirs[x.id] = to_string(*f->second);
      }
      items.push_back(it);
    }
  }
  const Coord w = (rx1 - rx0) * scale, h = (ry1 - ry0) * scale;
  const int legend = 40;
  auto px = [&](Coord x) { return (x - rx0) * scale; };
  auto py = [&](Coord y) { return (ry1 - y) * scale; };
  std::ostringstream s;
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h + legend
    << "\" viewBox=\"0 0 " << w << " " << h + legend << "\">\n";
  s << "<defs><pattern id=\"hatch\" width=\"6\" height=\"6\" patternUnits=\"userSpaceOnUse\" "
       "patternTransform=\"rotate(45)\"><line x1=\"0\" y1=\"0\" x2=\"0\" y2=\"6\" "
       "stroke=\"#4a78c2\" stroke-width=\"2\"/></pattern></defs>\n";
  s << "<rect class=\"region\" x=\"0\" y=\"0\" width=\"" << w << "\" height=\"" << h
    << "\" fill=\"white\" stroke=\"black\"/>\n";
  for (const auto& it : items) {
    if (!it.ext) continue;
    const auto& e = *it.ext;
    s << "<rect class=\"extension\" data-id=\"" << it.id << "\" data-dir=\"" << dirs[it.id]
      << "\" x=\"" << px(e[0]) << "\" y=\"" << py(e[3]) << "\" width=\"" << (e[2] - e[0]) * scale
      << "\" height=\"" << (e[3] - e[1]) * scale
      << "\" fill=\"url(#hatch)\" fill-opacity=\"0.6\" stroke=\"none\"/>\n";
  }
  for (const auto& it : items) {
    auto role = roles.find(it.id);
    const bool guard = role != roles.end() && role->second.rfind("guard", 0) == 0;
    s << "<rect class=\"" << (guard ? "body guard" : "body") << "\" data-id=\"" << it.id
      << "\" x=\"" << px(it.x0) << "\" y=\"" << py(it.y1) << "\" width=\"" << (it.x1 - it.x0) * scale
      << "\" height=\"" << (it.y1 - it.y0) * scale << "\" fill=\""
      << (guard ? "#999999" : "#e07a3f") << "\" fill-opacity=\"0.8\" stroke=\"black\"/>\n";
    if (role != roles.end()) {
      s << "<text class=\"label\" x=\"" << px(it.x0) + 1 << "\" y=\"" << py(it.y1) + scale - 2
        << "\" font-size=\"" << std::max(6, scale / 2) << "\">" << detail::xml_escape(role->second)
        << "</text>\n";
    }
  }
  s << "<g class=\"legend\" font-size=\"11\">"
    << "<rect x=\"4\" y=\"" << h + 8 << "\" width=\"12\" height=\"12\" fill=\"#e07a3f\"/>"
    << "<text x=\"20\" y=\"" << h + 18 << "\">body</text>"
    << "<rect x=\"64\" y=\"" << h + 8 << "\" width=\"12\" height=\"12\" fill=\"url(#hatch)\"/>"
    << "<text x=\"80\" y=\"" << h + 18 << "\">extension</text>"
    << "<rect x=\"150\" y=\"" << h + 8 << "\" width=\"12\" height=\"12\" fill=\"#999999\"/>"
    << "<text x=\"166\" y=\"" << h + 18 << "\">guard</text></g>\n";
  s << "</svg>\n";
  return s.str();
}

}  // namespace rect_escape

#endif  // RECT_ESCAPE_IO_HPP_
