#include "cheeger/arc_polygon.hpp"

#include <algorithm>
#include <array>
#include <limits>

namespace cheeger::geometry {

namespace {

double loop_signed_area(const Loop& loop) {
  double a = 0.0;
  for (const auto& e : loop) a += piece_signed_area(e.piece);
  return a;
}

double loop_length(const Loop& loop) {
  double p = 0.0;
  for (const auto& e : loop) p += piece_length(e.piece);
  return p;
}

Box loop_bounds(const Loop& loop) {
  Box b{{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()},
        {-std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()}};
  auto grow = [&b](Vec2 p) {
    b.lo.x = std::min(b.lo.x, p.x);
    b.lo.y = std::min(b.lo.y, p.y);
    b.hi.x = std::max(b.hi.x, p.x);
    b.hi.y = std::max(b.hi.y, p.y);
  };
  for (const auto& e : loop) {
    grow(piece_start(e.piece));
    grow(piece_end(e.piece));
    if (const auto* arc = std::get_if<Arc>(&e.piece)) {
      for (int k = 0; k < 4; ++k) {
        const double ang = k * 0.5 * pi;
        if (arc->covers_angle(ang)) grow(arc->point_at_angle(ang));
      }
    }
  }
  return b;
}

void validate_loop(const Loop& loop, double scale, const char* what) {
  if (loop.empty()) throw ValidationError(std::string(what) + " loop is empty");
  const double tol = 1e-9 * std::max(scale, 1e-300);
  for (std::size_t i = 0; i < loop.size(); ++i) {
    const auto& cur = loop[i].piece;
    const auto& next = loop[(i + 1) % loop.size()].piece;
    if (const auto* arc = std::get_if<Arc>(&cur)) {
      if (!(arc->radius > 0.0)) throw ValidationError("arc radius must be positive");
      if (std::abs(arc->span) > two_pi) throw ValidationError("arc span exceeds 2pi");
    }
    if (distance(piece_end(cur), piece_start(next)) > tol) {
      throw ValidationError(std::string(what) + " loop is not closed at edge " +
                            std::to_string(i));
    }
  }
}

// Crossing count of the ray {x + s e_1, s > 0} with one y-monotone piece, half-open in y.
int ray_crossings_segment(Vec2 a, Vec2 b, Vec2 x) {
  if ((a.y <= x.y) == (b.y <= x.y)) return 0;
  const double s = (x.y - a.y) / (b.y - a.y);
  const double xi = a.x + s * (b.x - a.x);
  return xi > x.x ? 1 : 0;
}

int ray_crossings_arc(const Arc& arc, Vec2 x) {
  // Split into y-monotone pieces at the top and bottom of the circle; on each piece
  // the arc behaves like a segment for the half-open crossing rule.
  const double s0 = arc.start_angle;
  const double s1 = arc.end_angle();
  const double lo = std::min(s0, s1);
  const double hi = std::max(s0, s1);
  std::vector<double> cuts{lo};
  // multiples of pi/2 + k*pi strictly inside (lo, hi)
  double k = std::ceil((lo - 0.5 * pi) / pi);
  for (double c = 0.5 * pi + k * pi; c < hi; c += pi) {
    if (c > lo) cuts.push_back(c);
  }
  cuts.push_back(hi);
  int count = 0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double t0 = cuts[i];
    const double t1 = cuts[i + 1];
    const Vec2 a = arc.point_at_angle(t0);
    const Vec2 b = arc.point_at_angle(t1);
    if ((a.y <= x.y) == (b.y <= x.y)) continue;
    const double dy = x.y - arc.center.y;
    const double dx = std::sqrt(std::max(0.0, arc.radius * arc.radius - dy * dy));
    // the monotone piece lies on the right half iff its mid-angle has positive cosine
    const double mid = 0.5 * (t0 + t1);
    const double xi = arc.center.x + (std::cos(mid) >= 0.0 ? dx : -dx);
    if (xi > x.x) ++count;
  }
  return count;
}

bool segments_cross(Vec2 p1, Vec2 p2, Vec2 q1, Vec2 q2) {
  const double d1 = cross(p2 - p1, q1 - p1);
  const double d2 = cross(p2 - p1, q2 - p1);
  const double d3 = cross(q2 - q1, p1 - q1);
  const double d4 = cross(q2 - q1, p2 - q1);
  return ((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0));
}

}  // namespace

ArcPolygon::ArcPolygon(Loop outer, std::vector<Loop> holes)
    : outer_(std::move(outer)), holes_(std::move(holes)) {
  const double scale = loop_bounds(outer_).diameter();
  validate_loop(outer_, scale, "outer");
  if (!(loop_signed_area(outer_) > 0.0)) {
    throw ValidationError("outer loop must be positively oriented with nonzero area");
  }
  for (const auto& h : holes_) {
    validate_loop(h, scale, "hole");
    if (!(loop_signed_area(h) < 0.0)) throw ValidationError("hole loops must be clockwise");
  }
}

ArcPolygon ArcPolygon::from_vertices(std::span<const Vec2> ccw_vertices) {
  if (ccw_vertices.size() < 3) throw ValidationError("polygon needs at least 3 vertices");
  Loop loop;
  loop.reserve(ccw_vertices.size());
  for (std::size_t i = 0; i < ccw_vertices.size(); ++i) {
    loop.push_back({Segment{ccw_vertices[i], ccw_vertices[(i + 1) % ccw_vertices.size()]},
                    EdgeRole::boundary});
  }
  return ArcPolygon(std::move(loop));
}

double ArcPolygon::perimeter() const {
  double p = loop_length(outer_);
  for (const auto& h : holes_) p += loop_length(h);
  return p;
}

double ArcPolygon::area() const {
  double a = loop_signed_area(outer_);
  for (const auto& h : holes_) a += loop_signed_area(h);
  return a;
}

Box ArcPolygon::bounds() const { return loop_bounds(outer_); }

std::vector<const BoundaryEdge*> ArcPolygon::all_edges() const {
  std::vector<const BoundaryEdge*> edges;
  for (const auto& e : outer_) edges.push_back(&e);
  for (const auto& h : holes_) {
    for (const auto& e : h) edges.push_back(&e);
  }
  return edges;
}

bool ArcPolygon::contains(Vec2 x) const {
  int crossings = 0;
  for (const auto* e : all_edges()) {
    if (const auto* s = std::get_if<Segment>(&e->piece)) {
      crossings += ray_crossings_segment(s->start, s->end, x);
    } else {
      crossings += ray_crossings_arc(std::get<Arc>(e->piece), x);
    }
  }
  return (crossings % 2) == 1;
}

double ArcPolygon::boundary_distance(Vec2 x) const {
  double d = std::numeric_limits<double>::infinity();
  for (const auto* e : all_edges()) d = std::min(d, piece_distance(e->piece, x));
  return d;
}

bool ArcPolygon::is_convex_polygon() const {
  if (!holes_.empty()) return false;
  for (std::size_t i = 0; i < outer_.size(); ++i) {
    if (!std::holds_alternative<Segment>(outer_[i].piece)) return false;
    const auto& next = outer_[(i + 1) % outer_.size()].piece;
    if (cross(piece_tangent_end(outer_[i].piece), piece_tangent_start(next)) < -1e-12) {
      return false;
    }
  }
  return true;
}

bool ArcPolygon::is_simple(double chord_tolerance) const {
  const double tol = chord_tolerance > 0.0 ? chord_tolerance : 1e-4 * diameter();
  struct Chord {
    Vec2 a, b;
    std::size_t edge;
    bool slit;
  };
  std::vector<Chord> chords;
  std::size_t edge_id = 0;
  std::vector<std::pair<std::size_t, std::size_t>> loop_ranges;
  auto add_loop = [&](const Loop& loop) {
    const std::size_t first = edge_id;
    for (const auto& e : loop) {
      std::vector<Vec2> pts;
      piece_polygonize(e.piece, tol, pts);
      pts.push_back(piece_end(e.piece));
      for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
        chords.push_back({pts[k], pts[k + 1], edge_id, e.role == EdgeRole::slit});
      }
      ++edge_id;
    }
    loop_ranges.emplace_back(first, edge_id);
  };
  add_loop(outer_);
  for (const auto& h : holes_) add_loop(h);
  auto adjacent = [&](std::size_t i, std::size_t j) {
    if (i == j) return true;
    for (auto [first, last] : loop_ranges) {
      if (i >= first && i < last && j >= first && j < last) {
        const std::size_t n = last - first;
        const std::size_t di = (i - first), dj = (j - first);
        return (di + 1) % n == dj || (dj + 1) % n == di;
      }
    }
    return false;
  };
  for (std::size_t i = 0; i < chords.size(); ++i) {
    for (std::size_t j = i + 1; j < chords.size(); ++j) {
      if (chords[i].slit || chords[j].slit) continue;
      if (adjacent(chords[i].edge, chords[j].edge)) continue;
      if (segments_cross(chords[i].a, chords[i].b, chords[j].a, chords[j].b)) return false;
    }
  }
  return true;
}

Metrics arcpolygon_metrics(const ArcPolygon& shape) { return shape.metrics(); }

std::vector<std::vector<Vec2>> polygonize(const ArcPolygon& shape, double chord_tolerance) {
  if (!(chord_tolerance > 0.0)) throw DomainError("chord tolerance must be positive");
  std::vector<std::vector<Vec2>> loops;
  auto convert = [&](const Loop& loop) {
    std::vector<Vec2> pts;
    for (const auto& e : loop) piece_polygonize(e.piece, chord_tolerance, pts);
    loops.push_back(std::move(pts));
  };
  convert(shape.outer());
  for (const auto& h : shape.holes()) convert(h);
  return loops;
}

double signed_area(std::span<const Vec2> loop) {
  double a = 0.0;
  for (std::size_t i = 0; i < loop.size(); ++i) {
    a += cross(loop[i], loop[(i + 1) % loop.size()]);
  }
  return 0.5 * a;
}

Metrics polygon_metrics(std::span<const std::vector<Vec2>> loops) {
  Metrics m;
  for (const auto& loop : loops) {
    for (std::size_t i = 0; i < loop.size(); ++i) {
      m.perimeter += distance(loop[i], loop[(i + 1) % loop.size()]);
    }
    m.area += signed_area(loop);
  }
  return m;
}

Incircle inradius(const ArcPolygon& shape) {
  const Box box = shape.bounds();
  constexpr int n = 48;
  struct Candidate {
    Vec2 x;
    double d;
  };
  std::vector<Candidate> cands;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const Vec2 x{box.lo.x + (i + 0.5) * box.width() / n, box.lo.y + (j + 0.5) * box.height() / n};
      if (shape.contains(x)) cands.push_back({x, shape.boundary_distance(x)});
    }
  }
  if (cands.empty()) throw ValidationError("shape has no interior at scan resolution");
  std::sort(cands.begin(), cands.end(), [](const auto& l, const auto& r) { return l.d > r.d; });
  cands.resize(std::min<std::size_t>(cands.size(), 6));

  Incircle best{cands.front().x, cands.front().d};
  const double stop = 1e-13 * box.diameter();
  // 64 directions: a ridge of the maximin distance is ascended as long as some direction
  // falls inside its ascent cone
  std::array<Vec2, 64> dirs;
  for (std::size_t k = 0; k < dirs.size(); ++k) {
    dirs[k] = unit_at(two_pi * static_cast<double>(k) / static_cast<double>(dirs.size()));
  }
  for (const auto& c : cands) {
    Vec2 x = c.x;
    double d = c.d;
    double step = std::max(box.width(), box.height()) / n;
    while (step > stop) {
      bool moved = false;
      for (const auto& dir : dirs) {
        const Vec2 y = x + step * dir;
        if (!shape.contains(y)) continue;
        const double dy = shape.boundary_distance(y);
        if (dy > d) {
          x = y;
          d = dy;
          moved = true;
        }
      }
      if (!moved) step *= 0.5;
    }
    if (d > best.radius) best = {x, d};
  }
  return best;
}

}  // namespace cheeger::geometry
