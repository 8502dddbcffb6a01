#pragma once

// Shared generators and independent oracles for the test suites.

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "cheeger/arc_polygon.hpp"
#include "cheeger/curve.hpp"
#include "cheeger/strip.hpp"
#include "cheeger/strips.hpp"

namespace fixtures {

using cheeger::Arc;
using cheeger::Piece;
using cheeger::Segment;
using cheeger::Vec2;
using cheeger::geometry::Curve;
using cheeger::geometry::Strip;

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline int uniform_int(std::mt19937_64& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

/// Finite strip about a random arc spline: straight ends of length >= 3a, arcs with
/// curvature * a <= 0.8, total turning below 2.5 rad. Retries until admissible.
inline Strip random_finite_strip(std::mt19937_64& rng) {
  while (true) {
    const double a = uniform(rng, 0.3, 1.5);
    double heading = uniform(rng, 0.0, 2.0 * cheeger::pi);
    Vec2 p{uniform(rng, -1.0, 1.0), uniform(rng, -1.0, 1.0)};
    std::vector<Piece> pieces;
    auto straight = [&](double len) {
      const Vec2 end = p + len * cheeger::unit_at(heading);
      pieces.push_back(Segment{p, end});
      p = end;
    };
    auto bend = [&](double radius, double span) {
      const double s = span > 0 ? 1.0 : -1.0;
      const Vec2 dir = cheeger::unit_at(heading);
      const Vec2 center = p + s * radius * cheeger::perp(dir);
      const Arc arc{center, radius, cheeger::angle_of(p - center), span};
      pieces.push_back(arc);
      p = arc.end();
      heading += span;
    };
    straight(a * uniform(rng, 3.0, 5.0));
    const int arcs = uniform_int(rng, 1, 3);
    double turning = 0.0;
    for (int k = 0; k < arcs; ++k) {
      const double span = (uniform_int(rng, 0, 1) ? 1.0 : -1.0) * uniform(rng, 0.3, 1.2);
      turning += span;
      bend(a * uniform(rng, 1.25, 4.0), span);
      if (k + 1 < arcs && uniform_int(rng, 0, 1)) straight(a * uniform(rng, 0.2, 2.0));
    }
    if (std::abs(turning) > 2.5) continue;
    straight(a * uniform(rng, 3.0, 5.0));
    Strip strip = Strip::make(Curve::composite(std::move(pieces)), a);
    if (cheeger::geometry::check_admissible(strip, 256).admissible()) return strip;
  }
}

/// Strip about the unit-speed graph of A sin(w x), x in [0, len], with max curvature * a <= 0.9.
inline Strip random_sine_strip(std::mt19937_64& rng) {
  const double amp = uniform(rng, 0.05, 0.4);
  const double w = uniform(rng, 0.5, 1.5);
  const double len = uniform(rng, 6.0, 12.0);
  const double a = std::min(0.9 / (amp * w * w), uniform(rng, 0.3, 1.2));
  auto curve = Curve::sample_unit_speed([&](double x) { return Vec2{x, amp * std::sin(w * x)}; }, 0.0, len, 801);
  return Strip::make(std::move(curve), a);
}

inline Strip random_annulus(std::mt19937_64& rng) {
  const double radius = uniform(rng, 1.0, 4.0);
  const double a = radius * uniform(rng, 0.1, 0.95);
  return Strip::make(Curve::circle({uniform(rng, -1, 1), uniform(rng, -1, 1)}, radius, uniform_int(rng, 0, 1) == 1), a);
}

/// One of the three strip families above.
inline Strip random_strip(std::mt19937_64& rng) {
  switch (uniform_int(rng, 0, 2)) {
    case 0: return random_finite_strip(rng);
    case 1: return random_sine_strip(rng);
    default: return random_annulus(rng);
  }
}

/// Random star-shaped counterclockwise polygon in [0, L] x (-a, a).
inline std::vector<Vec2> random_star_polygon(std::mt19937_64& rng, const Strip& strip) {
  const double L = strip.curve.length();
  const double a = strip.halfwidth;
  const double qc = uniform(rng, 0.2 * L, 0.8 * L);
  const double tc = uniform(rng, -0.5 * a, 0.5 * a);
  const double rq = std::min(qc, L - qc) * uniform(rng, 0.2, 0.98);
  const double rt = (a - std::abs(tc)) * uniform(rng, 0.3, 0.98);
  const int n = uniform_int(rng, 3, 14);
  std::vector<double> angles;
  // every angular gap below pi keeps the centre inside, so the polygon is simple
  for (bool ok = false; !ok;) {
    angles.clear();
    for (int i = 0; i < n; ++i) angles.push_back(uniform(rng, 0.0, 2.0 * cheeger::pi));
    std::sort(angles.begin(), angles.end());
    ok = angles.front() + 2.0 * cheeger::pi - angles.back() < 0.9 * cheeger::pi;
    for (int i = 1; i < n; ++i) ok = ok && angles[i] - angles[i - 1] < 0.9 * cheeger::pi;
  }
  std::vector<Vec2> poly;
  for (double th : angles) {
    const double rho = uniform(rng, 0.15, 1.0);
    poly.push_back({qc + rq * rho * std::cos(th), tc + rt * rho * std::sin(th)});
  }
  return poly;
}

/// Random valid profile on a sub-interval of the strip, with occasional jumps.
inline cheeger::strips::Profile random_profile(std::mt19937_64& rng, const Strip& strip) {
  const double L = strip.curve.length();
  const double a = strip.halfwidth;
  const double q0 = uniform(rng, 0.0, 0.4 * L);
  const double q1 = uniform(rng, 0.6 * L, L);
  const int n = uniform_int(rng, 2, 20);
  std::vector<double> q{q0, q1};
  for (int i = 0; i < n - 2; ++i) q.push_back(uniform(rng, q0, q1));
  std::sort(q.begin(), q.end());
  q.erase(std::unique(q.begin(), q.end()), q.end());
  cheeger::strips::Profile p;
  p.q = q;
  auto pair = [&]() {
    double lo = uniform(rng, -a, a);
    double hi = uniform(rng, -a, a);
    if (lo > hi) std::swap(lo, hi);
    if (hi - lo < 1e-3 * a) hi = std::min(a, lo + 1e-3 * a);
    return std::pair{lo, hi};
  };
  for (std::size_t i = 0; i < q.size(); ++i) {
    const auto [lo, hi] = pair();
    p.lower.left.push_back(lo);
    p.upper.left.push_back(hi);
    if (i > 0 && i + 1 < q.size() && uniform_int(rng, 0, 2) == 0) {
      const auto [lo2, hi2] = pair();
      p.lower.right.push_back(lo2);
      p.upper.right.push_back(hi2);
    } else {
      p.lower.right.push_back(lo);
      p.upper.right.push_back(hi);
    }
  }
  return p;
}

// ---------------------------------------------------------------------------
// Oracles

/// Planar perimeter and area of the image of a (q, t)-polygon under the tube map, by dense
/// sampling of every edge.
inline cheeger::geometry::Metrics mapped_polygon_metrics(const std::vector<Vec2>& poly, const Strip& strip,
                                                         int samples_per_edge = 4000) {
  std::vector<Vec2> pts;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Vec2 a = poly[i];
    const Vec2 b = poly[(i + 1) % poly.size()];
    for (int k = 0; k < samples_per_edge; ++k) {
      const double s = static_cast<double>(k) / samples_per_edge;
      const Vec2 x = a + s * (b - a);
      pts.push_back(cheeger::geometry::tube_map(strip, x.x, x.y));
    }
  }
  double per = 0.0;
  double area = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const Vec2 u = pts[i];
    const Vec2 v = pts[(i + 1) % pts.size()];
    per += cheeger::distance(u, v);
    area += cheeger::cross(u, v);
  }
  return {per, std::abs(0.5 * area)};
}

inline double shoelace(const std::vector<Vec2>& p) {
  double a = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) a += cheeger::cross(p[i], p[(i + 1) % p.size()]);
  return 0.5 * a;
}

inline double polyline_perimeter(const std::vector<Vec2>& p) {
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) s += cheeger::distance(p[i], p[(i + 1) % p.size()]);
  return s;
}

/// Perimeter and area of the sector of radius 2a and angle alpha with every corner of angle
/// below pi rounded by radius-r arcs, from elementary trigonometry.
struct SectorOpening {
  double perimeter;
  double area;
  double quotient() const { return perimeter / area; }
};

inline SectorOpening sector_opening_formula(double alpha, double a, double r) {
  const double R = 2.0 * a;
  const bool slit = alpha >= 2.0 * cheeger::pi;
  double area = 0.5 * R * R * alpha;
  double per = (slit ? 2.0 * R : 2.0 * R) + R * alpha;
  // two corners where a straight side meets the circle
  const double d = R - r;
  const double phi = std::asin(r / d);
  const double ell = std::sqrt(d * d - r * r);
  const double removed = 0.5 * R * R * phi - 0.5 * ell * r - 0.5 * r * r * (0.5 * cheeger::pi + phi);
  const double dp = r * (0.5 * cheeger::pi + phi) - (R - ell) - R * phi;
  area -= 2.0 * removed;
  per += 2.0 * dp;
  if (alpha < cheeger::pi) {
    const double cot = 1.0 / std::tan(0.5 * alpha);
    area -= r * r * (cot - 0.5 * (cheeger::pi - alpha));
    per += -2.0 * r * cot + r * (cheeger::pi - alpha);
  }
  return {per, area};
}

/// Minimum over r of the formula above, by dense scan and golden-section.
inline double sector_h_formula(double alpha, double a) {
  const double inr = alpha >= cheeger::pi ? a : 2.0 * a * std::sin(0.5 * alpha) / (1.0 + std::sin(0.5 * alpha));
  auto q = [&](double r) { return sector_opening_formula(alpha, a, r).quotient(); };
  const int n = 2000;
  int best = 1;
  for (int i = 1; i < n; ++i) {
    if (q(inr * i / n) < q(inr * best / n)) best = i;
  }
  double lo = inr * (best - 1) / n;
  double hi = inr * std::min(best + 1, n - 1) / n;
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  while (hi - lo > 1e-12) {
    const double x1 = hi - g * (hi - lo);
    const double x2 = lo + g * (hi - lo);
    if (q(x1) < q(x2)) {
      hi = x2;
    } else {
      lo = x1;
    }
  }
  return q(0.5 * (lo + hi));
}

/// Rectangle (-b, b) x (-a, a) Cheeger constant from the closed form.
inline double rectangle_formula(double a, double b) {
  return (a + b + std::sqrt((a - b) * (a - b) + cheeger::pi * a * b)) / (2.0 * a * b);
}

}  // namespace fixtures
