#include "cheeger/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

namespace cheeger::io {

using geometry::ArcPolygon;
using geometry::BoundaryEdge;
using geometry::Curve;
using geometry::CurveKind;
using geometry::EdgeRole;
using geometry::Loop;
using geometry::Strip;
using geometry::StripKind;

namespace {

json point(Vec2 p) { return json::array({p.x, p.y}); }

Vec2 point_from(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw ValidationError("expected a point [x, y]");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

double number(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number()) {
    throw ValidationError(std::string("missing numeric field '") + key + "'");
  }
  return j.at(key).get<double>();
}

json piece_to_json(const Piece& p) {
  if (const auto* s = std::get_if<Segment>(&p)) {
    return {{"type", "segment"}, {"start", point(s->start)}, {"end", point(s->end)}};
  }
  const auto& a = std::get<Arc>(p);
  return {{"type", "arc"},
          {"center", point(a.center)},
          {"radius", a.radius},
          {"start_angle", a.start_angle},
          {"span", a.span}};
}

Piece piece_from_json(const json& j) {
  const std::string type = j.value("type", "");
  if (type == "segment") return Segment{point_from(j.at("start")), point_from(j.at("end"))};
  if (type == "arc") {
    return Arc{point_from(j.at("center")), number(j, "radius"), number(j, "start_angle"), number(j, "span")};
  }
  throw ValidationError("edge type must be 'segment' or 'arc'");
}

const char* role_name(EdgeRole r) {
  switch (r) {
    case EdgeRole::boundary: return "boundary";
    case EdgeRole::free: return "free";
    case EdgeRole::slit: return "slit";
  }
  return "boundary";
}

EdgeRole role_from(const std::string& s) {
  if (s == "boundary") return EdgeRole::boundary;
  if (s == "free") return EdgeRole::free;
  if (s == "slit") return EdgeRole::slit;
  throw ValidationError("unknown edge role '" + s + "'");
}

json loop_to_json(const Loop& loop) {
  json arr = json::array();
  for (const auto& e : loop) {
    json j = piece_to_json(e.piece);
    j["role"] = role_name(e.role);
    arr.push_back(std::move(j));
  }
  return arr;
}

Loop loop_from_json(const json& j) {
  if (!j.is_array()) throw ValidationError("loop must be an array of edges");
  Loop loop;
  for (const auto& e : j) loop.push_back({piece_from_json(e), role_from(e.value("role", "boundary"))});
  return loop;
}

StripKind strip_kind_from(const std::string& s) {
  if (s == "annulus") return StripKind::annulus;
  if (s == "finite") return StripKind::finite;
  if (s == "semi-infinite") return StripKind::semi_infinite;
  if (s == "infinite") return StripKind::infinite;
  throw ValidationError("unknown strip kind '" + s + "'");
}

template <class F>
auto guarded(F&& f) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw ValidationError(std::string("malformed JSON document: ") + e.what());
  }
}

}  // namespace

json to_json(const Curve& curve) {
  json j;
  j["kind"] = geometry::to_string(curve.kind());
  j["length"] = curve.length();
  switch (curve.kind()) {
    case CurveKind::segment: {
      const auto& s = std::get<Segment>(curve.pieces().front());
      j["start"] = point(s.start);
      j["end"] = point(s.end);
      break;
    }
    case CurveKind::circular_arc: {
      const auto& a = std::get<Arc>(curve.pieces().front());
      j["center"] = point(a.center);
      j["radius"] = a.radius;
      j["start_angle"] = a.start_angle;
      j["span"] = a.span;
      break;
    }
    case CurveKind::full_circle: {
      const auto& a = std::get<Arc>(curve.pieces().front());
      j["center"] = point(a.center);
      j["radius"] = a.radius;
      j["start_angle"] = a.start_angle;
      j["counterclockwise"] = a.span > 0.0;
      break;
    }
    case CurveKind::sampled_polyline: {
      j["samples"] = vertices_to_json(curve.samples());
      j["closed"] = curve.closed();
      break;
    }
    case CurveKind::composite: {
      json arr = json::array();
      for (const auto& p : curve.pieces()) arr.push_back(piece_to_json(p));
      j["pieces"] = arr;
      break;
    }
  }
  return j;
}

Curve curve_from_json(const json& j) {
  return guarded([&] {
    const std::string kind = j.value("kind", "");
    if (kind == "segment") return Curve::segment(point_from(j.at("start")), point_from(j.at("end")));
    if (kind == "circular-arc") {
      return Curve::arc(point_from(j.at("center")), number(j, "radius"), number(j, "start_angle"), number(j, "span"));
    }
    if (kind == "full-circle") {
      return Curve::circle(point_from(j.at("center")), number(j, "radius"), j.value("counterclockwise", true),
                           j.value("start_angle", 0.0));
    }
    if (kind == "sampled-polyline") return Curve::polyline(vertices_from_json(j.at("samples")), j.value("closed", false));
    if (kind == "composite") {
      std::vector<Piece> pieces;
      for (const auto& p : j.at("pieces")) pieces.push_back(piece_from_json(p));
      return Curve::composite(std::move(pieces));
    }
    throw ValidationError("unknown curve kind '" + kind + "'");
  });
}

json to_json(const Strip& strip) {
  json j{{"curve", to_json(strip.curve)}, {"halfwidth", strip.halfwidth}, {"kind", geometry::to_string(strip.kind)}};
  if (strip.truncation_length) j["truncation_length"] = *strip.truncation_length;
  return j;
}

Strip strip_from_json(const json& j) {
  return guarded([&] {
    std::optional<StripKind> kind;
    if (j.contains("kind")) kind = strip_kind_from(j.at("kind").get<std::string>());
    std::optional<double> L;
    if (j.contains("truncation_length")) L = number(j, "truncation_length");
    return Strip::make(curve_from_json(j.at("curve")), number(j, "halfwidth"), kind, L);
  });
}

std::vector<Vec2> vertices_from_json(const json& j) {
  return guarded([&] {
    const json& arr = j.is_object() ? j.at("vertices") : j;
    if (!arr.is_array()) throw ValidationError("expected a vertex array");
    std::vector<Vec2> v;
    for (const auto& p : arr) v.push_back(point_from(p));
    return v;
  });
}

json vertices_to_json(std::span<const Vec2> v) {
  json arr = json::array();
  for (const Vec2& p : v) arr.push_back(point(p));
  return arr;
}

json to_json(const ArcPolygon& shape) {
  json holes = json::array();
  for (const auto& h : shape.holes()) holes.push_back(loop_to_json(h));
  return {{"outer", loop_to_json(shape.outer())}, {"holes", holes}};
}

ArcPolygon arc_polygon_from_json(const json& j) {
  return guarded([&] {
    std::vector<Loop> holes;
    if (j.contains("holes")) {
      for (const auto& h : j.at("holes")) holes.push_back(loop_from_json(h));
    }
    return ArcPolygon(loop_from_json(j.at("outer")), std::move(holes));
  });
}

json to_json(const geometry::Metrics& m) {
  return {{"perimeter", m.perimeter}, {"area", m.area}, {"quotient", m.area > 0.0 ? json(m.quotient()) : json()}};
}

json to_json(const CheegerResult& r) {
  json j{{"h", r.h},
         {"r_star", r.r_star},
         {"lower_bound", r.lower_bound},
         {"upper_bound", r.upper_bound},
         {"method", r.method},
         {"tolerance", r.tolerance},
         {"warnings", r.warnings}};
  j["k"] = r.k ? json(*r.k) : json();
  if (r.cheeger_set) {
    j["cheeger_set"] = to_json(*r.cheeger_set);
    j["cheeger_set_metrics"] = to_json(r.cheeger_set->metrics());
  } else {
    j["cheeger_set"] = nullptr;
  }
  return j;
}

CheegerResult cheeger_result_from_json(const json& j) {
  return guarded([&] {
    CheegerResult r;
    r.h = number(j, "h");
    r.r_star = number(j, "r_star");
    r.lower_bound = number(j, "lower_bound");
    r.upper_bound = number(j, "upper_bound");
    r.method = j.value("method", "");
    r.tolerance = j.value("tolerance", 0.0);
    r.warnings = j.value("warnings", std::vector<std::string>{});
    if (j.contains("k") && !j.at("k").is_null()) r.k = j.at("k").get<double>();
    if (j.contains("cheeger_set") && !j.at("cheeger_set").is_null()) {
      r.cheeger_set = arc_polygon_from_json(j.at("cheeger_set"));
    }
    return r;
  });
}

json to_json(const geometry::AdmissibilityReport& r) {
  return {{"max_kappa_a", r.max_kappa_a},
          {"curvature_ok", r.curvature_ok},
          {"injective", r.injective},
          {"overlapping_cells", r.overlapping_cells},
          {"admissible", r.admissible()}};
}

json to_json(const strips::Profile& p) {
  auto jumps = [](const std::vector<strips::Jump>& js) {
    json arr = json::array();
    for (const auto& jp : js) arr.push_back({{"q", jp.q}, {"left", jp.left}, {"right", jp.right}});
    return arr;
  };
  return {{"q", p.q},
          {"lower", {{"left", p.lower.left}, {"right", p.lower.right}}},
          {"upper", {{"left", p.upper.left}, {"right", p.upper.right}}},
          {"lower_jumps", jumps(p.lower_jumps())},
          {"upper_jumps", jumps(p.upper_jumps())}};
}

json to_json(const strips::StripizeReport& r) {
  return {{"profile", to_json(r.profile)}, {"stripized", to_json(r.stripized)}, {"original", to_json(r.original)}};
}

json to_json(const opening::OpeningSweepResult& r) {
  json q = json::array();
  for (double v : r.quotients) q.push_back(std::isfinite(v) ? json(v) : json());
  json j{{"r_grid", r.r_grid},
         {"quotients", q},
         {"coarse_r_hat", r.coarse_r_hat},
         {"coarse_min", r.coarse_min},
         {"local_minima", r.local_minima},
         {"r_hat", r.r_hat},
         {"h", r.h},
         {"inradius", r.inradius},
         {"used_fallback", r.used_fallback}};
  j["best_set"] = r.best_set ? to_json(*r.best_set) : json();
  return j;
}

json to_json(const certificates::CertReport& r) {
  json j{{"h_claim", r.h_claim},
         {"sup_v", r.sup_v},
         {"min_divergence", r.min_divergence},
         {"argmin", {r.argmin_q, r.argmin_t}},
         {"tol_v", r.tol_v},
         {"tol_div", r.tol_div},
         {"passed", r.passed},
         {"reason", r.reason}};
  j["certified_bound"] = r.certified_bound ? json(*r.certified_bound) : json();
  return j;
}

json to_json(const certificates::EigenvalueBounds& b) {
  json j{{"cheeger_bound", b.cheeger_bound}, {"stronger", b.stronger}};
  j["strip_bound"] = b.strip_bound ? json(*b.strip_bound) : json();
  return j;
}

json to_json(const sectors::Table1Row& row) {
  return {{"label", row.label},         {"alpha", row.alpha},         {"h", row.h},
          {"k", row.k},                 {"reference_h", row.reference_h},     {"reference_k", row.reference_k},
          {"tolerance", row.tolerance}, {"within_tolerance", row.within_tolerance}};
}

certificates::GridField field_from_json(const json& j, const Strip& strip) {
  return guarded([&] {
    const auto nq = j.at("n_q").get<std::size_t>();
    const auto nt = j.at("n_t").get<std::size_t>();
    if (j.contains("halfwidth") && std::abs(number(j, "halfwidth") - strip.halfwidth) > 1e-12 * strip.halfwidth) {
      throw ValidationError("field half-width does not match the strip");
    }
    if (j.contains("length") && std::abs(number(j, "length") - strip.curve.length()) > 1e-9 * strip.curve.length()) {
      throw ValidationError("field q-range does not match the strip");
    }
    return certificates::GridField::from_values(strip, nq, nt, j.at("v_q").get<std::vector<double>>(),
                                                j.at("v_t").get<std::vector<double>>());
  });
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ValidationError("cannot parse '" + path + "': " + e.what());
  }
}

std::string sig6(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

namespace {

struct Frame {
  geometry::Box box;
  double scale = 1.0;
  double margin = 0.0;
  double x(Vec2 p) const { return (p.x - box.lo.x + margin) * scale; }
  double y(Vec2 p) const { return (box.hi.y - p.y + margin) * scale; }
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

void append_piece(std::ostringstream& d, const Frame& f, const Piece& p) {
  if (const auto* s = std::get_if<Segment>(&p)) {
    d << " L " << fmt(f.x(s->end)) << ' ' << fmt(f.y(s->end));
    return;
  }
  const auto& a = std::get<Arc>(p);
  const int parts = static_cast<int>(std::ceil(std::abs(a.span) / (0.75 * pi)));
  const double rad = a.radius * f.scale;
  for (int k = 1; k <= parts; ++k) {
    const Vec2 end = a.point_at_angle(a.start_angle + a.span * k / parts);
    // y is flipped, so counterclockwise arcs sweep in the negative SVG direction
    d << " A " << fmt(rad) << ' ' << fmt(rad) << " 0 0 " << (a.span > 0.0 ? 0 : 1) << ' ' << fmt(f.x(end)) << ' '
      << fmt(f.y(end));
  }
}

std::string loop_path(const Loop& loop, const Frame& f) {
  std::ostringstream d;
  const Vec2 s = piece_start(loop.front().piece);
  d << "M " << fmt(f.x(s)) << ' ' << fmt(f.y(s));
  for (const auto& e : loop) append_piece(d, f, e.piece);
  d << " Z";
  return d.str();
}

std::string shape_path(const ArcPolygon& shape, const Frame& f) {
  std::string d = loop_path(shape.outer(), f);
  for (const auto& h : shape.holes()) d += ' ' + loop_path(h, f);
  return d;
}

}  // namespace

void write_svg(std::ostream& out, const ArcPolygon& domain, const std::optional<ArcPolygon>& cheeger_set,
               const SvgStyle& style) {
  Frame f;
  f.box = domain.bounds();
  f.scale = style.px_per_unit;
  f.margin = style.margin_units;
  const double w = (f.box.width() + 2 * f.margin) * f.scale;
  const double h = (f.box.height() + 2 * f.margin) * f.scale;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(w) << "\" height=\"" << fmt(h)
      << "\" viewBox=\"0 0 " << fmt(w) << ' ' << fmt(h) << "\">\n";
  if (cheeger_set) {
    out << "  <path id=\"cheeger-set\" d=\"" << shape_path(*cheeger_set, f)
        << "\" fill=\"#d9d9d9\" fill-rule=\"evenodd\" stroke=\"none\"/>\n";
  }
  out << "  <path id=\"domain\" d=\"" << shape_path(domain, f)
      << "\" fill=\"none\" stroke=\"#1a1a1a\" stroke-width=\"2\" stroke-linejoin=\"round\"/>\n";
  if (cheeger_set) {
    for (const auto* e : cheeger_set->all_edges()) {
      if (e->role != EdgeRole::free) continue;
      std::ostringstream d;
      const Vec2 s = piece_start(e->piece);
      d << "M " << fmt(f.x(s)) << ' ' << fmt(f.y(s));
      append_piece(d, f, e->piece);
      out << "  <path class=\"free-arc\" d=\"" << d.str() << "\" fill=\"none\" stroke=\"#555555\" stroke-width=\"1\"/>\n";
    }
  }
  out << "</svg>\n";
}

}  // namespace cheeger::io
