#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include <json.hpp>

#include "cheeger/arc_polygon.hpp"
#include "cheeger/certificates.hpp"
#include "cheeger/curve.hpp"
#include "cheeger/opening.hpp"
#include "cheeger/result.hpp"
#include "cheeger/sectors.hpp"
#include "cheeger/strip.hpp"
#include "cheeger/strips.hpp"

namespace cheeger::io {

using json = nlohmann::json;

// Curves: {"kind": "segment" | "circular-arc" | "full-circle" | "sampled-polyline" | "composite", ...}
json to_json(const geometry::Curve& curve);
geometry::Curve curve_from_json(const json& j);

// Strips: {"curve": {...}, "halfwidth": a, "kind": "...", "truncation_length": L}
json to_json(const geometry::Strip& strip);
geometry::Strip strip_from_json(const json& j);

// Vertex lists: [[x, y], ...] or {"vertices": [[x, y], ...]}
std::vector<Vec2> vertices_from_json(const json& j);
json vertices_to_json(std::span<const Vec2> v);

// Arc polygons: {"outer": [edge, ...], "holes": [[edge, ...], ...]}
json to_json(const geometry::ArcPolygon& shape);
geometry::ArcPolygon arc_polygon_from_json(const json& j);

json to_json(const CheegerResult& r);
CheegerResult cheeger_result_from_json(const json& j);

json to_json(const geometry::Metrics& m);
json to_json(const geometry::AdmissibilityReport& r);
json to_json(const strips::Profile& p);
json to_json(const strips::StripizeReport& r);
json to_json(const opening::OpeningSweepResult& r);
json to_json(const certificates::CertReport& r);
json to_json(const certificates::EigenvalueBounds& b);
json to_json(const sectors::Table1Row& row);

/// Field files: {"n_q": .., "n_t": .., "v_q": [...], "v_t": [...]} in q-major node order.
certificates::GridField field_from_json(const json& j, const geometry::Strip& strip);

json read_json_file(const std::string& path);

/// Shortest decimal with 6 significant digits.
std::string sig6(double v);

struct SvgStyle {
  double px_per_unit = 128.0;
  double margin_units = 0.25;
};

/// Domain outline stroked dark, the Cheeger set as one light-gray filled path, and its
/// free-boundary arcs stroked. y points up.
void write_svg(std::ostream& out, const geometry::ArcPolygon& domain,
               const std::optional<geometry::ArcPolygon>& cheeger_set, const SvgStyle& style = {});

}  // namespace cheeger::io
