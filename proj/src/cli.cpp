#include "cheeger/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include "cheeger/certificates.hpp"
#include "cheeger/convex.hpp"
#include "cheeger/io.hpp"
#include "cheeger/opening.hpp"
#include "cheeger/raster.hpp"
#include "cheeger/sectors.hpp"
#include "cheeger/strips.hpp"

namespace cheeger::cli {

using io::json;

namespace {

double parse_number(const std::string& s) {
  if (s.empty()) throw ValidationError("empty number");
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size() || !std::isfinite(v)) throw ValidationError("bad number '" + s + "'");
  return v;
}

double parse_ratio(const std::string& s) {
  const auto slash = s.find('/');
  if (slash == std::string::npos) return parse_number(s);
  const double den = parse_number(s.substr(slash + 1));
  if (den == 0.0) throw ValidationError("division by zero in '" + s + "'");
  return parse_number(s.substr(0, slash)) / den;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ValidationError("cannot write '" + path + "'");
  return f;
}

geometry::Strip load_strip(const RunConfig& c) {
  if (c.strip_path) return io::strip_from_json(io::read_json_file(*c.strip_path));
  if (!c.curve_path) throw ValidationError("give --strip or --curve with --halfwidth");
  if (!c.halfwidth) throw ValidationError("--curve needs --halfwidth");
  auto curve = io::curve_from_json(io::read_json_file(*c.curve_path));
  std::optional<geometry::StripKind> kind;
  if (c.strip_kind) {
    const std::string& k = *c.strip_kind;
    if (k == "annulus") kind = geometry::StripKind::annulus;
    else if (k == "finite") kind = geometry::StripKind::finite;
    else if (k == "semi-infinite") kind = geometry::StripKind::semi_infinite;
    else if (k == "infinite") kind = geometry::StripKind::infinite;
    else throw ValidationError("unknown strip kind '" + k + "'");
  }
  return geometry::Strip::make(std::move(curve), *c.halfwidth, kind, c.truncation_length);
}

void maybe_svg(const RunConfig& c, const geometry::ArcPolygon& domain, const std::optional<geometry::ArcPolygon>& set) {
  if (!c.svg_path) return;
  auto f = open_out(*c.svg_path);
  io::write_svg(f, domain, set);
}

void write_csv(const RunConfig& c, const std::string& text, std::ostream& out) {
  if (!c.csv_path) return;
  if (*c.csv_path == "-") {
    out << text;
    return;
  }
  auto f = open_out(*c.csv_path);
  f << text;
}

// Runs a solver on validated input; a domain error from it is a solver failure, not bad input.
template <class F>
auto solve(F&& f) {
  try {
    return f();
  } catch (const DomainError& e) {
    throw std::runtime_error(e.what());
  }
}

int grid_resolution(const RunConfig& c) {
  if (c.resolution < 8 || c.resolution > 16384) throw ValidationError("--resolution must lie in [8, 16384]");
  return c.resolution;
}

std::size_t coarse_points(const RunConfig& c) {
  if (c.n_coarse < 16) throw ValidationError("--n-coarse must be at least 16");
  return static_cast<std::size_t>(c.n_coarse);
}

json cmd_rect(const RunConfig& c) {
  CheegerResult r;
  if (c.solver == "closed") {
    r = convex::rectangle_h(c.a, c.b);
  } else if (c.solver == "convex") {
    r = convex::solve_convex(convex::rectangle(c.a, c.b), c.tol);
    r.k = convex::rectangle_k(c.a, c.b);
  } else if (c.solver == "sweep") {
    opening::SweepOptions o;
    o.tol = c.tol;
    o.n_coarse = coarse_points(c);
    const auto domain = convex::rectangle(c.a, c.b).to_arc_polygon();
    const auto sw = solve([&] { return opening::sweep(domain, o); });
    r.h = sw.h;
    r.r_star = 1.0 / sw.h;
    r.lower_bound = r.upper_bound = sw.h;
    r.cheeger_set = sw.best_set;
    r.method = "opening-sweep";
    r.tolerance = o.tol;
    r.k = (sw.h - 1.0 / c.a) * 2.0 * c.b;
  } else {
    throw ValidationError("--solver must be closed, convex or sweep");
  }
  maybe_svg(c, convex::rectangle(c.a, c.b).to_arc_polygon(), r.cheeger_set);
  return {{"a", c.a}, {"b", c.b}, {"result", io::to_json(r)}};
}

json cmd_convex(const RunConfig& c) {
  if (!c.polygon_path) throw ValidationError("convex needs --polygon");
  const auto poly = convex::ConvexPolygon::make(io::vertices_from_json(io::read_json_file(*c.polygon_path)));
  const auto r = convex::solve_convex(poly, c.tol);
  maybe_svg(c, poly.to_arc_polygon(), r.cheeger_set);
  return {{"polygon", io::vertices_to_json(poly.vertices())}, {"result", io::to_json(r)}};
}

json cmd_strip(const RunConfig& c) {
  const auto strip = load_strip(c);
  strips::StripCheegerOptions o;
  o.sweep.tol = c.tol;
  o.sweep.n_coarse = coarse_points(c);
  json j{{"strip", io::to_json(strip)},
         {"admissibility", io::to_json(geometry::check_admissible(strip, o.admissibility_samples))}};
  const auto r = solve([&] { return strips::strip_cheeger(strip, o); });
  j["result"] = io::to_json(r);
  if (strip.bounded() || strip.truncation_length) {
    j["strip_metrics"] = io::to_json(strips::strip_area_perimeter(strip));
  }
  if (!strip.bounded() && strip.truncation_length) {
    j["truncation_ratio"] = strips::truncation_ratio(strip, *strip.truncation_length);
  }
  if (strip.bounded()) maybe_svg(c, geometry::strip_domain(strip), r.cheeger_set);
  return j;
}

json cmd_sector(const RunConfig& c) {
  const sectors::SectorSpec spec{parse_angle(c.alpha), c.a};
  sectors::SectorOptions o;
  o.tol = c.tol;
  o.n_coarse = coarse_points(c);
  if (c.method == "grid") {
    o.method = sectors::SectorMethod::grid;
    o.grid_resolution = grid_resolution(c);
  } else if (c.method != "exact") {
    throw ValidationError("--method must be exact or grid");
  }
  spec.validate();
  const auto r = solve([&] { return sectors::sector_cheeger(spec, o); });
  const auto domain = sectors::sector_domain(spec);
  maybe_svg(c, domain, r.cheeger.cheeger_set);
  if (c.pgm_path) {
    auto f = open_out(*c.pgm_path);
    raster::write_pgm(f, raster::rasterize(domain, grid_resolution(c)));
  }
  json j{{"alpha", spec.alpha}, {"a", spec.a}, {"gamma_length", spec.gamma_length()},
         {"h_unit_sector", r.h_unit}, {"result", io::to_json(r.cheeger)}};
  j["grid_h"] = r.grid_h ? json(*r.grid_h) : json();
  j["domain_metrics"] = io::to_json(domain.metrics());
  return j;
}

json cmd_table1(const RunConfig& c, std::ostream& out) {
  const auto rows = sectors::table1();
  json arr = json::array();
  std::ostringstream csv;
  csv << "alpha,label,h,k,reference_h,reference_k,within_tolerance\n";
  bool all = true;
  for (const auto& row : rows) {
    arr.push_back(io::to_json(row));
    all = all && row.within_tolerance;
    csv << io::sig6(row.alpha) << ',' << row.label << ',' << io::sig6(row.h) << ',' << io::sig6(row.k) << ','
        << io::sig6(row.reference_h) << ',' << io::sig6(row.reference_k) << ',' << (row.within_tolerance ? "yes" : "no")
        << '\n';
  }
  write_csv(c, csv.str(), out);
  return {{"rows", arr}, {"all_within_tolerance", all}};
}

json cmd_stripize(const RunConfig& c) {
  if (!c.polygon_path) throw ValidationError("stripize needs --polygon");
  const auto strip = load_strip(c);
  const auto poly = io::vertices_from_json(io::read_json_file(*c.polygon_path));
  const auto rep = strips::stripize(poly, strip);
  json j = io::to_json(rep);
  j["area_gain"] = rep.stripized.area - rep.original.area;
  j["perimeter_loss"] = rep.original.perimeter - rep.stripized.perimeter;
  return j;
}

json cmd_certify(const RunConfig& c) {
  const auto strip = load_strip(c);
  if (c.grid < 3) throw ValidationError("--grid must be at least 3");
  const auto n = static_cast<std::size_t>(c.grid);
  const auto field = c.field == "builtin" ? certificates::GridField::builtin(strip, n, n)
                                          : io::field_from_json(io::read_json_file(c.field), strip);
  const double claim = c.claim ? *c.claim : 1.0 / strip.halfwidth;
  const auto rep = certificates::certify_lower_bound(field, claim);
  json j{{"report", io::to_json(rep)}};
  if (claim > 0.0) j["eigenvalue_bounds"] = io::to_json(certificates::eigenvalue_bounds(claim, strip.halfwidth, c.p));
  return j;
}

json cmd_sweep(const RunConfig& c, std::ostream& out) {
  std::optional<geometry::ArcPolygon> domain;
  if (c.polygon_path) {
    domain = geometry::ArcPolygon::from_vertices(io::vertices_from_json(io::read_json_file(*c.polygon_path)));
  } else if (c.domain_path) {
    domain = io::arc_polygon_from_json(io::read_json_file(*c.domain_path));
  } else {
    domain = sectors::sector_domain({parse_angle(c.alpha), c.a});
  }
  opening::SweepOptions o;
  o.tol = c.tol;
  o.n_coarse = coarse_points(c);
  if (c.method == "grid") {
    o.mode = opening::SweepMode::grid;
    o.grid_resolution = grid_resolution(c);
  } else if (c.method != "exact") {
    throw ValidationError("--method must be exact or grid");
  }
  const auto sw = solve([&] { return opening::sweep(*domain, o); });
  std::ostringstream csv;
  csv << "r,quotient\n";
  for (std::size_t i = 0; i < sw.r_grid.size(); ++i) {
    csv << io::sig6(sw.r_grid[i]) << ',' << io::sig6(sw.quotients[i]) << '\n';
  }
  write_csv(c, csv.str(), out);
  maybe_svg(c, *domain, sw.best_set);
  return {{"sweep", io::to_json(sw)}, {"domain", io::to_json(*domain)}};
}

json cmd_scan(const RunConfig& c, std::ostream& out) {
  if (c.grid < 16) throw ValidationError("scan grid must be at least 16");
  const auto n = static_cast<std::size_t>(c.grid);
  json rows = json::array();
  std::ostringstream csv;
  if (c.scan_kind == "rect-k") {
    csv << "b,h,k\n";
    for (std::size_t i = 0; i < n; ++i) {
      const double b = std::pow(10.0, -3.0 + 6.0 * static_cast<double>(i) / static_cast<double>(n - 1));
      const double h = convex::rectangle_h_value(1.0, b);
      const double k = convex::rectangle_k(1.0, b);
      rows.push_back({{"b", b}, {"h", h}, {"k", k}});
      csv << io::sig6(b) << ',' << io::sig6(h) << ',' << io::sig6(k) << '\n';
    }
  } else if (c.scan_kind == "sector-hk") {
    csv << "alpha,h,k\n";
    sectors::SectorOptions o;
    o.grid_check = false;
    for (std::size_t i = 1; i <= n; ++i) {
      const double alpha = two_pi * static_cast<double>(i) / static_cast<double>(n);
      const auto r = sectors::sector_cheeger({alpha, 1.0}, o);
      rows.push_back({{"alpha", alpha}, {"h", r.cheeger.h}, {"k", *r.cheeger.k}});
      csv << io::sig6(alpha) << ',' << io::sig6(r.cheeger.h) << ',' << io::sig6(*r.cheeger.k) << '\n';
    }
  } else {
    throw ValidationError("--kind must be rect-k or sector-hk");
  }
  write_csv(c, csv.str(), out);
  return {{"kind", c.scan_kind}, {"rows", rows}};
}

json cmd_bounds(const RunConfig& c) {
  if (!c.h) throw ValidationError("bounds needs --h");
  return io::to_json(certificates::eigenvalue_bounds(*c.h, c.a, c.p));
}

}  // namespace

double parse_angle(const std::string& text) {
  std::string s;
  for (char ch : text) {
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  }
  if (s.empty()) throw ValidationError("empty angle");
  const auto at = s.find("pi");
  if (at == std::string::npos) return parse_ratio(s);
  std::string before = s.substr(0, at);
  const std::string after = s.substr(at + 2);
  if (!before.empty() && before.back() == '*') before.pop_back();
  double factor = 1.0;
  if (before == "-") {
    factor = -1.0;
  } else if (!before.empty()) {
    factor = parse_ratio(before);
  }
  if (!after.empty()) {
    if (after.front() != '/') throw ValidationError("bad angle expression '" + text + "'");
    const double den = parse_number(after.substr(1));
    if (den == 0.0) throw ValidationError("division by zero in '" + text + "'");
    factor /= den;
  }
  return factor * pi;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  json result;
  try {
    const std::string& cmd = config.command;
    if (cmd == "rect") result = cmd_rect(config);
    else if (cmd == "convex") result = cmd_convex(config);
    else if (cmd == "strip") result = cmd_strip(config);
    else if (cmd == "sector") result = cmd_sector(config);
    else if (cmd == "table1") result = cmd_table1(config, out);
    else if (cmd == "stripize") result = cmd_stripize(config);
    else if (cmd == "certify") result = cmd_certify(config);
    else if (cmd == "sweep") result = cmd_sweep(config, out);
    else if (cmd == "scan") result = cmd_scan(config, out);
    else if (cmd == "bounds") result = cmd_bounds(config);
    else throw ValidationError("unknown command '" + cmd + "'");
    result["command"] = cmd;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return exit_bad_input;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return exit_bad_input;
  } catch (const std::exception& e) {
    const json diag{{"command", config.command}, {"status", "solver-failure"}, {"error", e.what()}};
    out << diag.dump(2) << '\n';
    err << "solver failure: " << e.what() << '\n';
    return exit_solver_failure;
  }
  try {
    if (config.out_path) {
      auto f = open_out(*config.out_path);
      f << result.dump(2) << '\n';
    } else if (!(config.csv_path && *config.csv_path == "-")) {
      out << result.dump(2) << '\n';
    }
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return exit_bad_input;
  }
  return exit_ok;
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig c;
  CLI::App app{"Cheeger constants and Cheeger sets of planar domains"};
  app.require_subcommand(1);

  auto common = [&](CLI::App* s) {
    s->add_option("--out", c.out_path, "JSON output path (default stdout)");
  };
  auto strip_inputs = [&](CLI::App* s) {
    s->add_option("--strip", c.strip_path, "strip JSON");
    s->add_option("--curve", c.curve_path, "curve JSON");
    s->add_option("--halfwidth", c.halfwidth, "strip half-width a");
    s->add_option("--kind", c.strip_kind, "annulus | finite | semi-infinite | infinite");
    s->add_option("--L", c.truncation_length, "truncation length for non-finite strips");
  };

  auto* rect = app.add_subcommand("rect", "rectangle (-b, b) x (-a, a)");
  rect->add_option("--a", c.a)->required();
  rect->add_option("--b", c.b)->required();
  rect->add_option("--solver", c.solver, "closed | convex | sweep");
  rect->add_option("--tol", c.tol);
  rect->add_option("--svg", c.svg_path);
  common(rect);

  auto* cvx = app.add_subcommand("convex", "convex polygon from a vertex list");
  cvx->add_option("--polygon", c.polygon_path)->required();
  cvx->add_option("--tol", c.tol);
  cvx->add_option("--svg", c.svg_path);
  common(cvx);

  auto* strip = app.add_subcommand("strip", "curved strip about a curve");
  strip_inputs(strip);
  strip->add_option("--tol", c.tol);
  strip->add_option("--n-coarse", c.n_coarse);
  strip->add_option("--svg", c.svg_path);
  common(strip);

  auto* sector = app.add_subcommand("sector", "disc sector of radius 2a and angle alpha");
  sector->add_option("--alpha", c.alpha, "angle, e.g. pi/2 or 3*pi/4")->required();
  sector->add_option("--a", c.a);
  sector->add_option("--method", c.method, "exact | grid");
  sector->add_option("--resolution", c.resolution, "grid resolution");
  sector->add_option("--tol", c.tol);
  sector->add_option("--n-coarse", c.n_coarse);
  sector->add_option("--svg", c.svg_path);
  sector->add_option("--pgm", c.pgm_path, "write the domain mask");
  common(sector);

  auto* t1 = app.add_subcommand("table1", "sector table for the seven reference angles");
  t1->add_option("--csv", c.csv_path);
  common(t1);

  auto* sz = app.add_subcommand("stripize", "fill a (q, t) polygon along normal fibres");
  sz->add_option("--polygon", c.polygon_path)->required();
  strip_inputs(sz);
  common(sz);

  auto* cert = app.add_subcommand("certify", "check a vector-field lower-bound certificate");
  strip_inputs(cert);
  cert->add_option("--field", c.field, "builtin or a field JSON file");
  cert->add_option("--claim", c.claim, "claimed lower bound (default 1/a)");
  cert->add_option("--grid", c.grid, "nodes per direction");
  cert->add_option("--p", c.p, "eigenvalue exponent");
  common(cert);

  auto* sw = app.add_subcommand("sweep", "opening-family sweep of a domain");
  sw->add_option("--polygon", c.polygon_path);
  sw->add_option("--domain", c.domain_path, "arc-polygon JSON");
  sw->add_option("--alpha", c.alpha, "sector angle when no domain file is given");
  sw->add_option("--a", c.a);
  sw->add_option("--method", c.method, "exact | grid");
  sw->add_option("--resolution", c.resolution);
  sw->add_option("--n-coarse", c.n_coarse);
  sw->add_option("--tol", c.tol);
  sw->add_option("--csv", c.csv_path);
  sw->add_option("--svg", c.svg_path);
  common(sw);

  auto* scan = app.add_subcommand("scan", "parameter scans: rect-k (h, k against b) or sector-hk");
  scan->add_option("--kind", c.scan_kind)->required();
  scan->add_option("--grid", c.grid);
  scan->add_option("--csv", c.csv_path);
  common(scan);

  auto* bounds = app.add_subcommand("bounds", "eigenvalue lower bounds from h");
  bounds->set_help_flag("--help", "Print this help message and exit");
  bounds->add_option("--h", c.h)->required();
  bounds->add_option("--a", c.a);
  bounds->add_option("--p", c.p);
  common(bounds);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? exit_ok : exit_bad_input;
  }
  if (c.command.empty()) c.command = app.get_subcommands().front()->get_name();
  return run(c, out, err);
}

}  // namespace cheeger::cli
