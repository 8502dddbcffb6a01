#pragma once

#include <optional>
#include <span>
#include <vector>

#include "cheeger/arc_polygon.hpp"
#include "cheeger/result.hpp"

namespace cheeger::convex {

using geometry::ArcPolygon;

/// Bounded convex polygon, counterclockwise.
class ConvexPolygon {
 public:
  /// Validates convexity, orientation and nonzero area; drops repeated and collinear vertices.
  static ConvexPolygon make(std::vector<Vec2> ccw_vertices);

  std::span<const Vec2> vertices() const { return vertices_; }
  double area() const;
  double perimeter() const;
  double diameter() const;
  ConvexPolygon scaled(double factor) const;
  ArcPolygon to_arc_polygon() const;

 private:
  explicit ConvexPolygon(std::vector<Vec2> v) : vertices_(std::move(v)) {}
  std::vector<Vec2> vertices_;
  friend std::optional<ConvexPolygon> inner_parallel(const ConvexPolygon&, double);
};

/// Axis-aligned rectangle (-b, b) x (-a, a).
ConvexPolygon rectangle(double a, double b);
/// Regular n-gon inscribed in the circle of radius `radius` about the origin.
ConvexPolygon regular_polygon(std::size_t n, double radius);

/// Points at distance > r from the boundary: intersection of the edge half-planes
/// shifted inwards by r. Empty when the intersection has no interior.
std::optional<ConvexPolygon> inner_parallel(const ConvexPolygon& poly, double r);

double convex_inradius(const ConvexPolygon& poly);

/// Minkowski sum of `core` with the closed disc of radius r; corner arcs carry `arc_role`.
ArcPolygon dilate_by_disc(const ConvexPolygon& core, double r,
                          geometry::EdgeRole arc_role = geometry::EdgeRole::free);

/// Cheeger constant and set from the unique root of |Omega^r| = pi r^2.
/// `tol` <= 0 selects 1e-12 * diameter.
CheegerResult solve_convex(const ConvexPolygon& poly, double tol = 0.0);

/// Closed form for the rectangle (-b, b) x (-a, a).
double rectangle_h_value(double a, double b);
double rectangle_k(double a, double b);
CheegerResult rectangle_h(double a, double b);

}  // namespace cheeger::convex
