#include "cheeger/primitives.hpp"

#include <algorithm>

namespace cheeger {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

bool Arc::covers_angle(double angle, double tol) const {
  if (std::abs(span) >= two_pi) return true;
  // offset of `angle` from start, measured in the direction of travel
  double offset = wrap_angle(orientation() * (angle - start_angle));
  if (offset > two_pi - tol) offset -= two_pi;
  return offset >= -tol && offset <= std::abs(span) + tol;
}

double Arc::arclength_of_angle(double angle) const {
  double offset = wrap_angle(orientation() * (angle - start_angle));
  // angles just before the start wrap to ~2pi; treat them as negative
  if (offset > 0.5 * (std::abs(span) + two_pi)) offset -= two_pi;
  return offset * radius;
}

Vec2 piece_start(const Piece& p) {
  return std::visit(overloaded{[](const Segment& s) { return s.start; },
                               [](const Arc& a) { return a.start(); }},
                    p);
}

Vec2 piece_end(const Piece& p) {
  return std::visit(overloaded{[](const Segment& s) { return s.end; },
                               [](const Arc& a) { return a.end(); }},
                    p);
}

Vec2 piece_tangent_start(const Piece& p) {
  return std::visit(overloaded{[](const Segment& s) { return s.tangent_at_start(); },
                               [](const Arc& a) { return a.tangent_at_start(); }},
                    p);
}

Vec2 piece_tangent_end(const Piece& p) {
  return std::visit(overloaded{[](const Segment& s) { return s.tangent_at_end(); },
                               [](const Arc& a) { return a.tangent_at_end(); }},
                    p);
}

double piece_length(const Piece& p) {
  return std::visit([](const auto& e) { return e.length(); }, p);
}

Vec2 piece_point_at(const Piece& p, double s) {
  return std::visit([s](const auto& e) { return e.point_at(s); }, p);
}

Vec2 piece_tangent_at(const Piece& p, double s) {
  return std::visit(
      overloaded{[](const Segment& seg) { return seg.direction(); },
                 [s](const Arc& a) {
                   return a.tangent_at_angle(a.start_angle + a.orientation() * s / a.radius);
                 }},
      p);
}

double piece_curvature(const Piece& p) {
  return std::visit(overloaded{[](const Segment&) { return 0.0; },
                               [](const Arc& a) { return a.curvature(); }},
                    p);
}

double piece_signed_area(const Piece& p) {
  return std::visit(
      overloaded{[](const Segment& s) { return 0.5 * cross(s.start, s.end); },
                 [](const Arc& a) {
                   const double t0 = a.start_angle;
                   const double t1 = a.end_angle();
                   const double r = a.radius;
                   return 0.5 * (r * r * a.span +
                                 r * (a.center.x * (std::sin(t1) - std::sin(t0)) -
                                      a.center.y * (std::cos(t1) - std::cos(t0))));
                 }},
      p);
}

double piece_distance(const Piece& p, Vec2 x) {
  return std::visit(
      overloaded{[x](const Segment& s) {
                   const Vec2 d = s.end - s.start;
                   const double len2 = dot(d, d);
                   double u = len2 > 0.0 ? dot(x - s.start, d) / len2 : 0.0;
                   u = std::clamp(u, 0.0, 1.0);
                   return distance(x, s.start + u * d);
                 },
                 [x](const Arc& a) {
                   const Vec2 rel = x - a.center;
                   const double rho = norm(rel);
                   if (rho > 0.0 && a.covers_angle(angle_of(rel))) return std::abs(rho - a.radius);
                   if (rho == 0.0) return a.radius;
                   return std::min(distance(x, a.start()), distance(x, a.end()));
                 }},
      p);
}

void piece_polygonize(const Piece& p, double chord_tolerance, std::vector<Vec2>& out) {
  std::visit(overloaded{[&](const Segment& s) { out.push_back(s.start); },
                        [&](const Arc& a) {
                          double max_step = pi;
                          if (chord_tolerance < a.radius) {
                            max_step = 2.0 * std::acos(1.0 - chord_tolerance / a.radius);
                          }
                          const auto n = static_cast<std::size_t>(
                              std::max(1.0, std::ceil(std::abs(a.span) / max_step)));
                          for (std::size_t i = 0; i < n; ++i) {
                            out.push_back(a.point_at_angle(a.start_angle +
                                                           a.span * static_cast<double>(i) /
                                                               static_cast<double>(n)));
                          }
                        }},
             p);
}

Piece piece_reversed(const Piece& p) {
  return std::visit(overloaded{[](const Segment& s) -> Piece { return Segment{s.end, s.start}; },
                               [](const Arc& a) -> Piece {
                                 return Arc{a.center, a.radius, a.end_angle(), -a.span};
                               }},
                    p);
}

}  // namespace cheeger
