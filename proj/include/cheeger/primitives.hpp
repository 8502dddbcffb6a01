#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace cheeger {

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;

/// Input that violates a documented invariant (malformed loop, bad polygon, ...).
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A solver reached a state that valid input cannot produce.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  constexpr Vec2& operator+=(Vec2 o) { x += o.x; y += o.y; return *this; }
  constexpr Vec2& operator-=(Vec2 o) { x -= o.x; y -= o.y; return *this; }
  constexpr Vec2& operator*=(double s) { x *= s; y *= s; return *this; }
  friend constexpr bool operator==(Vec2, Vec2) = default;
};

constexpr Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
constexpr Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
constexpr Vec2 operator-(Vec2 a) { return {-a.x, -a.y}; }
constexpr Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
constexpr Vec2 operator*(Vec2 a, double s) { return {s * a.x, s * a.y}; }
constexpr Vec2 operator/(Vec2 a, double s) { return {a.x / s, a.y / s}; }

constexpr double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
/// Rotation by +pi/2.
constexpr Vec2 perp(Vec2 a) { return {-a.y, a.x}; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }
inline double distance(Vec2 a, Vec2 b) { return norm(a - b); }
inline Vec2 normalized(Vec2 a) {
  const double n = norm(a);
  return n > 0.0 ? a / n : Vec2{};
}
inline Vec2 unit_at(double angle) { return {std::cos(angle), std::sin(angle)}; }
inline double angle_of(Vec2 a) { return std::atan2(a.y, a.x); }

/// Wraps an angle into [0, 2pi).
inline double wrap_angle(double angle) {
  double w = std::fmod(angle, two_pi);
  if (w < 0.0) w += two_pi;
  if (w >= two_pi) w -= two_pi;
  return w;
}

/// Straight boundary piece, traversed from start to end.
struct Segment {
  Vec2 start;
  Vec2 end;

  double length() const { return distance(start, end); }
  Vec2 direction() const { return normalized(end - start); }
  Vec2 point_at(double s) const { return start + (s / length()) * (end - start); }
  Vec2 tangent_at_start() const { return direction(); }
  Vec2 tangent_at_end() const { return direction(); }
};

/// Circular arc. The sign of `span` is the orientation (positive = counterclockwise).
/// Spans live in [-2pi, 2pi]; a full circle has |span| == 2pi exactly.
struct Arc {
  Vec2 center;
  double radius = 0.0;
  double start_angle = 0.0;
  double span = 0.0;

  double orientation() const { return span >= 0.0 ? 1.0 : -1.0; }
  double length() const { return radius * std::abs(span); }
  double end_angle() const { return start_angle + span; }
  Vec2 point_at_angle(double angle) const { return center + radius * unit_at(angle); }
  Vec2 start() const { return point_at_angle(start_angle); }
  Vec2 end() const { return point_at_angle(end_angle()); }
  /// Point at arclength s from the start.
  Vec2 point_at(double s) const { return point_at_angle(start_angle + orientation() * s / radius); }
  Vec2 tangent_at_angle(double angle) const { return orientation() * perp(unit_at(angle)); }
  Vec2 tangent_at_start() const { return tangent_at_angle(start_angle); }
  Vec2 tangent_at_end() const { return tangent_at_angle(end_angle()); }
  /// Signed curvature with respect to the left normal.
  double curvature() const { return orientation() / radius; }
  /// True when `angle` lies on the swept range (inclusive, tolerance in radians).
  bool covers_angle(double angle, double tol = 0.0) const;
  /// Arclength position of the point at `angle` measured along the arc, assuming it is covered.
  double arclength_of_angle(double angle) const;
};

using Piece = std::variant<Segment, Arc>;

Vec2 piece_start(const Piece& p);
Vec2 piece_end(const Piece& p);
Vec2 piece_tangent_start(const Piece& p);
Vec2 piece_tangent_end(const Piece& p);
double piece_length(const Piece& p);
Vec2 piece_point_at(const Piece& p, double s);
Vec2 piece_tangent_at(const Piece& p, double s);
double piece_curvature(const Piece& p);
/// Green's-theorem contribution 1/2 * \int (x dy - y dx) along the piece.
double piece_signed_area(const Piece& p);
double piece_distance(const Piece& p, Vec2 x);
/// Chord vertices (start included, end excluded) so that each chord's sagitta is <= tol.
void piece_polygonize(const Piece& p, double chord_tolerance, std::vector<Vec2>& out);
Piece piece_reversed(const Piece& p);

}  // namespace cheeger
