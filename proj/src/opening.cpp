#include "cheeger/opening.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cheeger/convex.hpp"
#include "cheeger/parallel.hpp"
#include "cheeger/raster.hpp"

namespace cheeger::opening {

using geometry::BoundaryEdge;
using geometry::EdgeRole;
using geometry::Loop;

namespace {

struct Offset {
  // either the line through `point` with direction `dir`, or the circle (center, radius)
  bool is_line = true;
  Vec2 point;
  Vec2 dir;
  Vec2 center;
  double radius = 0.0;
};

std::optional<Offset> inward_offset(const Piece& p, double r) {
  Offset o;
  if (const auto* s = std::get_if<Segment>(&p)) {
    o.dir = s->direction();
    o.point = s->start + r * perp(o.dir);
    return o;
  }
  const auto& a = std::get<Arc>(p);
  o.is_line = false;
  o.center = a.center;
  o.radius = a.radius - a.orientation() * r;
  if (!(o.radius > 0.0)) return std::nullopt;
  return o;
}

std::vector<Vec2> intersect(const Offset& u, const Offset& v) {
  std::vector<Vec2> out;
  if (u.is_line && v.is_line) {
    const double den = cross(u.dir, v.dir);
    if (den == 0.0) return out;
    const double s = cross(v.point - u.point, v.dir) / den;
    out.push_back(u.point + s * u.dir);
    return out;
  }
  if (u.is_line != v.is_line) {
    const Offset& line = u.is_line ? u : v;
    const Offset& circ = u.is_line ? v : u;
    const double s0 = dot(circ.center - line.point, line.dir);
    const Vec2 foot = line.point + s0 * line.dir;
    const double d2 = std::pow(distance(foot, circ.center), 2);
    const double disc = circ.radius * circ.radius - d2;
    if (disc < 0.0) return out;
    const double w = std::sqrt(disc);
    out.push_back(foot - w * line.dir);
    out.push_back(foot + w * line.dir);
    return out;
  }
  const double d = distance(u.center, v.center);
  if (d == 0.0) return out;
  const double x = (d * d + u.radius * u.radius - v.radius * v.radius) / (2.0 * d);
  const double y2 = u.radius * u.radius - x * x;
  if (y2 < 0.0) return out;
  const Vec2 e = (v.center - u.center) / d;
  const Vec2 base = u.center + x * e;
  const double y = std::sqrt(y2);
  out.push_back(base + y * perp(e));
  out.push_back(base - y * perp(e));
  return out;
}

// Foot of the perpendicular from c onto the edge and its arclength parameter.
std::pair<Vec2, double> foot_on(const Piece& p, Vec2 c) {
  if (const auto* s = std::get_if<Segment>(&p)) {
    const double t = dot(c - s->start, s->direction());
    return {s->start + t * s->direction(), t};
  }
  const auto& a = std::get<Arc>(p);
  const double ang = angle_of(c - a.center);
  return {a.point_at_angle(ang), a.arclength_of_angle(ang)};
}

Piece trimmed(const Piece& p, double s0, double s1, Vec2 from, Vec2 to) {
  if (std::holds_alternative<Segment>(p)) return Segment{from, to};
  const auto& a = std::get<Arc>(p);
  const double o = a.orientation();
  return Arc{a.center, a.radius, a.start_angle + o * s0 / a.radius, o * (s1 - s0) / a.radius};
}

struct Corner {
  bool rounded = false;
  Vec2 center;
  Vec2 foot_in;
  Vec2 foot_out;
  double s_in = 0.0;   // parameter on the incoming edge
  double s_out = 0.0;  // parameter on the outgoing edge
};

// Rounds one loop; returns nullopt when the construction is inconsistent.
std::optional<Loop> round_loop(const Loop& loop, double r, double scale,
                               std::vector<Vec2>& centers) {
  const std::size_t n = loop.size();
  const double eps = 1e-10 * scale;
  std::vector<Corner> corners(n);
  for (const auto& e : loop) {
    // a convex arc tighter than the disc is not followed by it
    if (const auto* a = std::get_if<Arc>(&e.piece); a && a->orientation() > 0 && a->radius <= r) {
      return std::nullopt;
    }
  }
  for (std::size_t k = 0; k < n; ++k) {
    const Piece& in = loop[k].piece;
    const Piece& out = loop[(k + 1) % n].piece;
    const Vec2 t_in = piece_tangent_end(in);
    const Vec2 t_out = piece_tangent_start(out);
    if (!(cross(t_in, t_out) > 1e-12)) continue;  // straight, smooth or reflex: kept
    const auto oi = inward_offset(in, r);
    const auto oo = inward_offset(out, r);
    if (!oi || !oo) return std::nullopt;
    const Vec2 vertex = piece_end(in);
    const auto cand = intersect(*oi, *oo);
    if (cand.empty()) return std::nullopt;
    Vec2 c = cand.front();
    for (const Vec2& x : cand) {
      if (distance(x, vertex) < distance(c, vertex)) c = x;
    }
    Corner& cr = corners[k];
    cr.rounded = true;
    cr.center = c;
    std::tie(cr.foot_in, cr.s_in) = foot_on(in, c);
    std::tie(cr.foot_out, cr.s_out) = foot_on(out, c);
    if (cr.s_in < -eps || cr.s_in > piece_length(in) + eps) return std::nullopt;
    if (cr.s_out < -eps || cr.s_out > piece_length(out) + eps) return std::nullopt;
    centers.push_back(c);
  }

  Loop result;
  for (std::size_t k = 0; k < n; ++k) {
    const Corner& before = corners[(k + n - 1) % n];
    const Corner& after = corners[k];
    const Piece& p = loop[k].piece;
    const double len = piece_length(p);
    const double s0 = before.rounded ? std::clamp(before.s_out, 0.0, len) : 0.0;
    const double s1 = after.rounded ? std::clamp(after.s_in, 0.0, len) : len;
    if (s0 > s1 + eps) return std::nullopt;
    if (s1 - s0 > eps) {
      const Vec2 from = before.rounded ? before.foot_out : piece_start(p);
      const Vec2 to = after.rounded ? after.foot_in : piece_end(p);
      result.push_back({trimmed(p, s0, s1, from, to), loop[k].role});
    }
    if (after.rounded) {
      const double a0 = angle_of(after.foot_in - after.center);
      const double span = wrap_angle(angle_of(after.foot_out - after.center) - a0);
      if (span > 0.0) result.push_back({Arc{after.center, r, a0, span}, EdgeRole::free});
    }
  }
  if (result.empty()) return std::nullopt;
  return result;
}

// Every kept boundary point must be touched by an inscribed disc of radius r.
bool kept_boundary_reachable(const ArcPolygon& domain, const ArcPolygon& shape, double r) {
  const double slack = 1e-7 * r;
  const auto edges = shape.all_edges();
  const int samples = edges.size() <= 64 ? 4 : 1;
  for (const auto* e : edges) {
    if (e->role == EdgeRole::free || e->role == EdgeRole::slit) continue;
    const double len = piece_length(e->piece);
    for (int k = 0; k < samples; ++k) {
      const double s = len * (k + 0.5) / samples;
      const Vec2 x = piece_point_at(e->piece, s) + r * perp(piece_tangent_at(e->piece, s));
      if (domain.boundary_distance(x) < r - slack) return false;
    }
  }
  return true;
}

OpeningResult grid_fallback(const ArcPolygon& domain, double r, const OpeningOptions& options,
                            std::string why) {
  if (!options.allow_grid_fallback) throw InternalError("exact opening failed: " + why);
  OpeningResult res;
  res.grid_fallback = true;
  res.warning = "exact opening failed (" + why + "); grid oracle used";
  const auto m = raster::grid_opening(raster::rasterize(domain, options.fallback_resolution), r);
  if (!m) {
    res.empty = true;
    return res;
  }
  res.metrics = *m;
  return res;
}

double domain_inradius(const ArcPolygon& domain) {
  if (domain.is_convex_polygon()) {
    std::vector<Vec2> v;
    for (const auto& e : domain.outer()) v.push_back(piece_start(e.piece));
    return convex::convex_inradius(convex::ConvexPolygon::make(std::move(v)));
  }
  return geometry::inradius(domain).radius;
}

}  // namespace

OpeningResult opening_exact(const ArcPolygon& domain, double r, const OpeningOptions& options) {
  if (!(r > 0.0)) throw DomainError("opening radius must be positive");
  OpeningResult res;
  if (domain.is_convex_polygon()) {
    std::vector<Vec2> v;
    for (const auto& e : domain.outer()) v.push_back(piece_start(e.piece));
    const auto core = convex::inner_parallel(convex::ConvexPolygon::make(std::move(v)), r);
    if (!core) {
      res.empty = true;
      return res;
    }
    res.shape = convex::dilate_by_disc(*core, r);
    res.metrics = res.shape->metrics();
    return res;
  }

  const double inr = options.inradius ? *options.inradius : domain_inradius(domain);
  if (r >= inr) {
    res.empty = true;
    return res;
  }
  const double scale = domain.diameter();
  std::vector<Vec2> centers;
  auto outer = round_loop(domain.outer(), r, scale, centers);
  if (!outer) return grid_fallback(domain, r, options, "corner arcs overlap");
  std::vector<Loop> holes;
  for (const auto& h : domain.holes()) {
    auto rounded = round_loop(h, r, scale, centers);
    if (!rounded) return grid_fallback(domain, r, options, "corner arcs overlap");
    holes.push_back(std::move(*rounded));
  }
  for (const Vec2& c : centers) {
    if (!domain.contains(c) || domain.boundary_distance(c) < r * (1.0 - 1e-7)) {
      return grid_fallback(domain, r, options, "rounding disc leaves the domain");
    }
  }
  try {
    ArcPolygon shape(std::move(*outer), std::move(holes));
    if (!kept_boundary_reachable(domain, shape, r)) {
      return grid_fallback(domain, r, options, "boundary narrower than the disc");
    }
    res.metrics = shape.metrics();
    res.shape = std::move(shape);
  } catch (const ValidationError& e) {
    return grid_fallback(domain, r, options, e.what());
  }
  return res;
}

std::optional<double> opening_quotient(const ArcPolygon& domain, double r, const SweepOptions& options) {
  if (options.mode == SweepMode::grid) {
    const auto m = raster::grid_opening(raster::rasterize(domain, options.grid_resolution), r);
    if (!m || !(m->area > 0.0)) return std::nullopt;
    return m->quotient();
  }
  const auto res = opening_exact(domain, r, options.opening);
  if (res.empty || !(res.metrics.area > 0.0)) return std::nullopt;
  return res.metrics.quotient();
}

OpeningSweepResult sweep(const ArcPolygon& domain, const SweepOptions& options) {
  if (options.n_coarse < 16) throw DomainError("sweep needs at least 16 coarse points");
  OpeningSweepResult out;
  out.inradius = options.opening.inradius ? *options.opening.inradius : domain_inradius(domain);
  const double inr = out.inradius;
  const double tol = options.tol > 0.0 ? options.tol : 1e-9 * inr;

  SweepOptions opts = options;
  opts.opening.inradius = inr;
  std::optional<raster::Raster> mask;
  if (opts.mode == SweepMode::grid) mask = raster::rasterize(domain, opts.grid_resolution);

  std::vector<bool> fallback(options.n_coarse, false);
  auto evaluate = [&](double r, bool* used_fallback) -> double {
    if (mask) {
      const auto m = raster::grid_opening(*mask, r);
      return m && m->area > 0.0 ? m->quotient() : std::numeric_limits<double>::infinity();
    }
    const auto res = opening_exact(domain, r, opts.opening);
    if (used_fallback) *used_fallback = res.grid_fallback;
    if (res.empty || !(res.metrics.area > 0.0)) return std::numeric_limits<double>::infinity();
    return res.metrics.quotient();
  };

  const std::size_t n = options.n_coarse;
  out.r_grid.resize(n);
  out.quotients.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.r_grid[i] = inr * static_cast<double>(i + 1) / static_cast<double>(n + 1);
  }
  auto body = [&](std::size_t i) {
    bool fb = false;
    out.quotients[i] = evaluate(out.r_grid[i], &fb);
    fallback[i] = fb;
  };
  if (mask) {
    for (std::size_t i = 0; i < n; ++i) body(i);
  } else {
    parallel_for(n, body);
  }
  out.used_fallback = std::any_of(fallback.begin(), fallback.end(), [](bool b) { return b; });

  std::size_t best = n;
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(out.quotients[i])) continue;
    // ties go to the larger r
    if (best == n || out.quotients[i] <= out.quotients[best]) best = i;
  }
  if (best == n) throw DomainError("every opening in the sweep is empty");
  out.coarse_r_hat = out.r_grid[best];
  out.coarse_min = out.quotients[best];
  for (std::size_t i = 0; i < n; ++i) {
    const double left = i > 0 ? out.quotients[i - 1] : std::numeric_limits<double>::infinity();
    const double right = i + 1 < n ? out.quotients[i + 1] : std::numeric_limits<double>::infinity();
    if (std::isfinite(out.quotients[i]) && out.quotients[i] <= left && out.quotients[i] <= right) {
      out.local_minima.push_back(out.r_grid[i]);
    }
  }

  // golden-section on the two coarse cells around the minimum
  double lo = best > 0 ? out.r_grid[best - 1] : 0.5 * out.r_grid[0];
  double hi = best + 1 < n ? out.r_grid[best + 1] : 0.5 * (out.r_grid[n - 1] + inr);
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = hi - g * (hi - lo);
  double x2 = lo + g * (hi - lo);
  bool fb = false;
  double f1 = evaluate(x1, &fb);
  out.used_fallback = out.used_fallback || fb;
  double f2 = evaluate(x2, &fb);
  out.used_fallback = out.used_fallback || fb;
  double best_r = out.coarse_r_hat;
  double best_q = out.coarse_min;
  auto consider = [&](double r, double q) {
    if (q < best_q) {
      best_q = q;
      best_r = r;
    }
  };
  consider(x1, f1);
  consider(x2, f2);
  while (hi - lo > tol) {
    if (f1 <= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - g * (hi - lo);
      f1 = evaluate(x1, &fb);
      consider(x1, f1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + g * (hi - lo);
      f2 = evaluate(x2, &fb);
      consider(x2, f2);
    }
    out.used_fallback = out.used_fallback || fb;
  }
  // at a Cheeger set the free arcs have radius 1/h; r -> 1/Q(r) converges quadratically there
  if (!mask && std::abs(best_r * best_q - 1.0) < 1e-3) {
    for (int it = 0; it < 8; ++it) {
      const double r = 1.0 / best_q;
      if (!(r > 0.0 && r < inr) || r == best_r) break;
      const double q = evaluate(r, &fb);
      // near the fixed point quotients differ only by rounding
      if (!(q <= best_q * (1.0 + 1e-13))) break;
      best_q = q;
      best_r = r;
    }
  }
  out.r_hat = best_r;
  out.h = best_q;
  if (!mask) {
    auto res = opening_exact(domain, best_r, opts.opening);
    out.best_set = std::move(res.shape);
  }
  return out;
}

}  // namespace cheeger::opening
