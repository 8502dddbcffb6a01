#pragma once

#include <optional>
#include <span>
#include <vector>

#include "cheeger/primitives.hpp"

namespace cheeger::geometry {

/// What an edge of a domain or Cheeger set represents.
enum class EdgeRole {
  boundary,  ///< part of the domain boundary
  free,      ///< free-boundary arc of a Cheeger candidate (lies inside the domain)
  slit,      ///< slit edge; traversed twice, once per side
};

struct BoundaryEdge {
  Piece piece;
  EdgeRole role = EdgeRole::boundary;
};

using Loop = std::vector<BoundaryEdge>;

struct Metrics {
  double perimeter = 0.0;
  double area = 0.0;

  double quotient() const { return perimeter / area; }
};

struct Box {
  Vec2 lo;
  Vec2 hi;

  double width() const { return hi.x - lo.x; }
  double height() const { return hi.y - lo.y; }
  double diameter() const { return std::hypot(width(), height()); }
};

/// Region bounded by line segments and circular arcs: one counterclockwise outer loop
/// and any number of clockwise hole loops. Slit edges appear twice, once per side.
class ArcPolygon {
 public:
  ArcPolygon() = default;
  explicit ArcPolygon(Loop outer, std::vector<Loop> holes = {});

  static ArcPolygon from_vertices(std::span<const Vec2> ccw_vertices);

  const Loop& outer() const { return outer_; }
  const std::vector<Loop>& holes() const { return holes_; }
  bool empty() const { return outer_.empty(); }

  double perimeter() const;
  double area() const;
  Metrics metrics() const { return {perimeter(), area()}; }
  Box bounds() const;
  double diameter() const { return bounds().diameter(); }

  bool contains(Vec2 x) const;
  double boundary_distance(Vec2 x) const;

  /// Every edge, outer loop first.
  std::vector<const BoundaryEdge*> all_edges() const;
  /// True when every edge is a segment, there are no holes and every vertex turns left.
  bool is_convex_polygon() const;
  /// Checks non-adjacent edges for crossings on a fine polygonization; slit edges are exempt.
  bool is_simple(double chord_tolerance = 0.0) const;

 private:
  Loop outer_;
  std::vector<Loop> holes_;
};

/// Perimeter and area, exact up to floating point.
Metrics arcpolygon_metrics(const ArcPolygon& shape);

/// Loops as vertex lists with arcs replaced by chords of sagitta <= chord_tolerance.
std::vector<std::vector<Vec2>> polygonize(const ArcPolygon& shape, double chord_tolerance);

/// Shoelace perimeter/area of closed vertex loops (holes carry negative area).
Metrics polygon_metrics(std::span<const std::vector<Vec2>> loops);
double signed_area(std::span<const Vec2> loop);

struct Incircle {
  Vec2 center;
  double radius = 0.0;
};

/// Largest inscribed disc, by a coarse interior scan followed by pattern search.
Incircle inradius(const ArcPolygon& shape);

}  // namespace cheeger::geometry
