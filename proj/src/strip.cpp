#include "cheeger/strip.hpp"

#include <algorithm>
#include <array>
#include <limits>

namespace cheeger::geometry {

namespace {

Piece offset_piece(const Piece& p, double t) {
  if (const auto* s = std::get_if<Segment>(&p)) {
    const Vec2 shift = t * perp(s->direction());
    return Segment{s->start + shift, s->end + shift};
  }
  const auto& a = std::get<Arc>(p);
  // the left normal points towards the centre on counterclockwise arcs
  const double radius = a.radius - a.orientation() * t;
  return Arc{a.center, radius, a.start_angle, a.span};
}

bool degenerate(const Piece& p) { return !(piece_length(p) > 0.0); }

struct Quad {
  std::array<Vec2, 4> v;
  Box box;
};

Quad make_quad(Vec2 a, Vec2 b, Vec2 c, Vec2 d) {
  Quad q{{a, b, c, d}, {}};
  // shrink slightly so cells that only touch (e.g. at a focal point) are not reported
  const Vec2 g = 0.25 * (a + b + c + d);
  for (auto& p : q.v) p = g + (1.0 - 1e-9) * (p - g);
  q.box.lo = q.box.hi = q.v[0];
  for (const auto& p : q.v) {
    q.box.lo.x = std::min(q.box.lo.x, p.x);
    q.box.lo.y = std::min(q.box.lo.y, p.y);
    q.box.hi.x = std::max(q.box.hi.x, p.x);
    q.box.hi.y = std::max(q.box.hi.y, p.y);
  }
  return q;
}

bool proper_cross(Vec2 p1, Vec2 p2, Vec2 q1, Vec2 q2) {
  const double d1 = cross(p2 - p1, q1 - p1);
  const double d2 = cross(p2 - p1, q2 - p1);
  const double d3 = cross(q2 - q1, p1 - q1);
  const double d4 = cross(q2 - q1, p2 - q1);
  return ((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0));
}

bool inside_quad(const Quad& q, Vec2 x) {
  bool in = false;
  for (std::size_t i = 0; i < 4; ++i) {
    const Vec2 a = q.v[i];
    const Vec2 b = q.v[(i + 1) % 4];
    if ((a.y > x.y) != (b.y > x.y)) {
      const double xi = a.x + (x.y - a.y) / (b.y - a.y) * (b.x - a.x);
      if (x.x < xi) in = !in;
    }
  }
  return in;
}

bool quads_overlap(const Quad& p, const Quad& q) {
  if (p.box.hi.x < q.box.lo.x || q.box.hi.x < p.box.lo.x || p.box.hi.y < q.box.lo.y ||
      q.box.hi.y < p.box.lo.y) {
    return false;
  }
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) {
      if (proper_cross(p.v[i], p.v[(i + 1) % 4], q.v[j], q.v[(j + 1) % 4])) return true;
    }
  }
  const Vec2 gp = 0.25 * (p.v[0] + p.v[1] + p.v[2] + p.v[3]);
  const Vec2 gq = 0.25 * (q.v[0] + q.v[1] + q.v[2] + q.v[3]);
  return inside_quad(q, gp) || inside_quad(p, gq);
}

}  // namespace

const char* to_string(StripKind kind) {
  switch (kind) {
    case StripKind::annulus: return "annulus";
    case StripKind::finite: return "finite";
    case StripKind::semi_infinite: return "semi-infinite";
    case StripKind::infinite: return "infinite";
  }
  return "unknown";
}

Strip Strip::make(Curve curve, double halfwidth, std::optional<StripKind> kind,
                  std::optional<double> truncation_length) {
  if (!(halfwidth > 0.0)) throw ValidationError("strip half-width must be positive");
  const StripKind k = kind.value_or(curve.closed() ? StripKind::annulus : StripKind::finite);
  if ((k == StripKind::annulus) != curve.closed()) {
    throw ValidationError("annulus classification requires a closed curve and vice versa");
  }
  if (truncation_length && !(*truncation_length > 0.0)) {
    throw ValidationError("truncation length must be positive");
  }
  return Strip{std::move(curve), halfwidth, k, truncation_length};
}

double Strip::gamma_length() const {
  switch (kind) {
    case StripKind::annulus:
    case StripKind::finite: return curve.length();
    case StripKind::semi_infinite:
    case StripKind::infinite:
      if (!truncation_length) throw DomainError("non-finite strip needs a truncation length");
      return kind == StripKind::infinite ? 2.0 * *truncation_length : *truncation_length;
  }
  return curve.length();
}

Vec2 tube_map(const Strip& strip, double q, double t) {
  if (std::abs(t) > strip.halfwidth * (1.0 + 1e-12)) {
    throw DomainError("offset |t| exceeds the half-width");
  }
  return strip.curve.point(q) + t * strip.curve.normal(q);
}

AdmissibilityReport check_admissible(const Strip& strip, std::size_t n_samples) {
  if (n_samples < 16) throw DomainError("admissibility check needs at least 16 samples");
  const double a = strip.halfwidth;
  const Curve& c = strip.curve;
  AdmissibilityReport report;

  const auto [k_lo, k_hi] = c.curvature_domain();
  double max_k = 0.0;
  for (std::size_t i = 0; i <= n_samples; ++i) {
    const double q = k_lo + (k_hi - k_lo) * static_cast<double>(i) / static_cast<double>(n_samples);
    max_k = std::max(max_k, std::abs(c.curvature_clamped(q)));
  }
  // analytic kinds: curvature is piecewise constant, so the piece values are exact
  for (const auto& p : c.pieces()) max_k = std::max(max_k, std::abs(piece_curvature(p)));
  report.max_kappa_a = max_k * a;
  report.curvature_ok = report.max_kappa_a <= 1.0;

  const bool closed = c.closed();
  const std::size_t n_cells = n_samples;
  const std::size_t n_stations = closed ? n_cells : n_cells + 1;
  std::vector<Vec2> lower(n_stations), upper(n_stations);
  for (std::size_t i = 0; i < n_stations; ++i) {
    const double q = c.length() * static_cast<double>(i) / static_cast<double>(n_cells);
    lower[i] = tube_map(strip, q, -a);
    upper[i] = tube_map(strip, q, a);
  }
  std::vector<Quad> cells;
  cells.reserve(n_cells);
  for (std::size_t i = 0; i < n_cells; ++i) {
    const std::size_t j = (i + 1) % n_stations;
    cells.push_back(make_quad(lower[i], lower[j], upper[j], upper[i]));
  }
  for (std::size_t i = 0; i < n_cells; ++i) {
    for (std::size_t j = i + 2; j < n_cells; ++j) {
      if (closed && i == 0 && j == n_cells - 1) continue;
      if (quads_overlap(cells[i], cells[j])) ++report.overlapping_cells;
    }
  }
  report.injective = report.overlapping_cells == 0;
  return report;
}

ArcPolygon strip_domain(const Strip& strip) {
  if (!strip.bounded() && !strip.curve.length()) throw DomainError("strip has no curve window");
  const double a = strip.halfwidth;
  const Curve& c = strip.curve;

  Loop minus_loop;  // t = -a, forward
  Loop plus_loop;   // t = +a, backward
  if (c.kind() != CurveKind::sampled_polyline) {
    for (const auto& p : c.pieces()) {
      Piece off = offset_piece(p, -a);
      if (const auto* arc = std::get_if<Arc>(&off); arc && !(arc->radius > 0.0)) continue;
      if (!degenerate(off)) minus_loop.push_back({off, EdgeRole::boundary});
    }
    const auto pieces = c.pieces();
    for (auto it = pieces.rbegin(); it != pieces.rend(); ++it) {
      Piece off = offset_piece(*it, a);
      if (const auto* arc = std::get_if<Arc>(&off); arc && !(arc->radius > 0.0)) continue;
      if (!degenerate(off)) plus_loop.push_back({piece_reversed(off), EdgeRole::boundary});
    }
  } else {
    const auto samples = c.breakpoints();
    const std::size_t n = c.closed() ? samples.size() - 1 : samples.size();
    std::vector<Vec2> lo(n), hi(n);
    for (std::size_t i = 0; i < n; ++i) {
      lo[i] = tube_map(strip, samples[i], -a);
      hi[i] = tube_map(strip, samples[i], a);
    }
    const std::size_t n_seg = c.closed() ? n : n - 1;
    for (std::size_t i = 0; i < n_seg; ++i) {
      minus_loop.push_back({Segment{lo[i], lo[(i + 1) % n]}, EdgeRole::boundary});
    }
    for (std::size_t k = 0; k < n_seg; ++k) {
      const std::size_t i = n_seg - 1 - k;
      plus_loop.push_back({Segment{hi[(i + 1) % n], hi[i]}, EdgeRole::boundary});
    }
  }

  if (c.closed()) {
    double area_minus = 0.0;
    for (const auto& e : minus_loop) area_minus += piece_signed_area(e.piece);
    if (area_minus > 0.0) return ArcPolygon(std::move(minus_loop), {std::move(plus_loop)});
    return ArcPolygon(std::move(plus_loop), {std::move(minus_loop)});
  }

  const double len = c.length();
  Loop loop = std::move(minus_loop);
  loop.push_back({Segment{tube_map(strip, len, -a), tube_map(strip, len, a)}, EdgeRole::boundary});
  for (auto& e : plus_loop) loop.push_back(std::move(e));
  loop.push_back({Segment{tube_map(strip, 0.0, a), tube_map(strip, 0.0, -a)}, EdgeRole::boundary});
  return ArcPolygon(std::move(loop));
}

}  // namespace cheeger::geometry
