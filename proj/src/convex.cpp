#include "cheeger/convex.hpp"

#include <algorithm>
#include <limits>

namespace cheeger::convex {

using geometry::BoundaryEdge;
using geometry::EdgeRole;
using geometry::Loop;

namespace {

double polygon_area(std::span<const Vec2> v) {
  double a = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) a += cross(v[i], v[(i + 1) % v.size()]);
  return 0.5 * a;
}

double polygon_diameter(std::span<const Vec2> v) {
  double d = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    for (std::size_t j = i + 1; j < v.size(); ++j) d = std::max(d, distance(v[i], v[j]));
  }
  return d;
}

// Removes repeated and collinear vertices (relative tolerance on the polygon scale).
std::vector<Vec2> clean(std::vector<Vec2> v, double scale) {
  const double eps = 1e-12 * scale;
  bool changed = true;
  while (changed && v.size() >= 3) {
    changed = false;
    for (std::size_t i = 0; i < v.size() && v.size() >= 3; ++i) {
      const Vec2 prev = v[(i + v.size() - 1) % v.size()];
      const Vec2 cur = v[i];
      const Vec2 next = v[(i + 1) % v.size()];
      const bool repeated = distance(prev, cur) <= eps;
      const double len = distance(prev, next);
      const bool collinear = len > 0.0 && std::abs(cross(cur - prev, next - prev)) / len <= eps &&
                             dot(cur - prev, next - cur) >= 0.0;
      if (repeated || collinear) {
        v.erase(v.begin() + static_cast<std::ptrdiff_t>(i));
        changed = true;
        break;
      }
    }
  }
  return v;
}

// Keeps the part of `poly` with dot(n, x) >= c.
std::vector<Vec2> clip(const std::vector<Vec2>& poly, Vec2 n, double c) {
  std::vector<Vec2> out;
  out.reserve(poly.size() + 1);
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Vec2 p = poly[i];
    const Vec2 q = poly[(i + 1) % poly.size()];
    const double fp = dot(n, p) - c;
    const double fq = dot(n, q) - c;
    if (fp >= 0.0) out.push_back(p);
    if ((fp >= 0.0) != (fq >= 0.0)) {
      const double s = fp / (fp - fq);
      out.push_back(p + s * (q - p));
    }
  }
  return out;
}

}  // namespace

ConvexPolygon ConvexPolygon::make(std::vector<Vec2> ccw_vertices) {
  if (ccw_vertices.size() < 3) throw ValidationError("convex polygon needs at least 3 vertices");
  const double scale = polygon_diameter(ccw_vertices);
  if (!(scale > 0.0)) throw ValidationError("degenerate polygon");
  std::vector<Vec2> v = clean(std::move(ccw_vertices), scale);
  if (v.size() < 3) throw ValidationError("degenerate polygon");
  if (!(polygon_area(v) > 0.0)) {
    throw ValidationError("polygon must be counterclockwise with nonzero area");
  }
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Vec2 e0 = v[(i + 1) % v.size()] - v[i];
    const Vec2 e1 = v[(i + 2) % v.size()] - v[(i + 1) % v.size()];
    if (cross(e0, e1) < -1e-14 * scale * scale) throw ValidationError("polygon is not convex");
  }
  // winding number one: total turning of 2pi rules out star-shaped self-overlaps
  double turning = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Vec2 e0 = v[(i + 1) % v.size()] - v[i];
    const Vec2 e1 = v[(i + 2) % v.size()] - v[(i + 1) % v.size()];
    turning += std::atan2(cross(e0, e1), dot(e0, e1));
  }
  if (std::abs(turning - two_pi) > 1e-6) throw ValidationError("polygon is not simple");
  return ConvexPolygon(std::move(v));
}

double ConvexPolygon::area() const { return polygon_area(vertices_); }

double ConvexPolygon::perimeter() const {
  double p = 0.0;
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    p += distance(vertices_[i], vertices_[(i + 1) % vertices_.size()]);
  }
  return p;
}

double ConvexPolygon::diameter() const { return polygon_diameter(vertices_); }

ConvexPolygon ConvexPolygon::scaled(double factor) const {
  if (!(factor > 0.0)) throw DomainError("scale factor must be positive");
  std::vector<Vec2> v = vertices_;
  for (auto& p : v) p = factor * p;
  return ConvexPolygon(std::move(v));
}

ArcPolygon ConvexPolygon::to_arc_polygon() const { return ArcPolygon::from_vertices(vertices_); }

ConvexPolygon rectangle(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) throw DomainError("rectangle sides must be positive");
  return ConvexPolygon::make({{-b, -a}, {b, -a}, {b, a}, {-b, a}});
}

ConvexPolygon regular_polygon(std::size_t n, double radius) {
  if (n < 3 || !(radius > 0.0)) throw DomainError("regular polygon needs n >= 3 and radius > 0");
  std::vector<Vec2> v;
  v.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    v.push_back(radius * unit_at(two_pi * static_cast<double>(i) / static_cast<double>(n)));
  }
  return ConvexPolygon::make(std::move(v));
}

std::optional<ConvexPolygon> inner_parallel(const ConvexPolygon& poly, double r) {
  if (!(r >= 0.0)) throw DomainError("inset distance must be nonnegative");
  const auto src = poly.vertices();
  if (r == 0.0) return poly;
  std::vector<Vec2> cur(src.begin(), src.end());
  for (std::size_t i = 0; i < src.size() && cur.size() >= 3; ++i) {
    const Vec2 a = src[i];
    const Vec2 b = src[(i + 1) % src.size()];
    const Vec2 n = perp(normalized(b - a));
    cur = clip(cur, n, dot(n, a) + r);
  }
  if (cur.size() < 3) return std::nullopt;
  const double scale = poly.diameter();
  cur = clean(std::move(cur), scale);
  if (cur.size() < 3) return std::nullopt;
  if (!(polygon_area(cur) > 1e-15 * poly.area())) return std::nullopt;
  return ConvexPolygon(std::move(cur));
}

double convex_inradius(const ConvexPolygon& poly) {
  double lo = 0.0;
  double hi = poly.diameter();
  for (int it = 0; it < 200 && hi - lo > 1e-15 * poly.diameter(); ++it) {
    const double mid = 0.5 * (lo + hi);
    if (inner_parallel(poly, mid)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

ArcPolygon dilate_by_disc(const ConvexPolygon& core, double r, EdgeRole arc_role) {
  if (!(r > 0.0)) throw DomainError("dilation radius must be positive");
  const auto v = core.vertices();
  const std::size_t n = v.size();
  std::vector<Vec2> outward(n);
  for (std::size_t k = 0; k < n; ++k) outward[k] = -perp(normalized(v[(k + 1) % n] - v[k]));
  Loop loop;
  loop.reserve(2 * n);
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t next = (k + 1) % n;
    loop.push_back(
        {Segment{v[k] + r * outward[k], v[next] + r * outward[k]}, EdgeRole::boundary});
    const double start = angle_of(outward[k]);
    const double span = wrap_angle(angle_of(outward[next]) - start);
    if (span > 0.0 && span < two_pi) {
      loop.push_back({Arc{v[next], r, start, span}, arc_role});
    }
  }
  return ArcPolygon(std::move(loop));
}

CheegerResult solve_convex(const ConvexPolygon& poly, double tol) {
  const double diam = poly.diameter();
  if (!(tol > 0.0)) tol = 1e-12 * diam;
  auto g = [&poly](double r) {
    const auto inner = inner_parallel(poly, r);
    return (inner ? inner->area() : 0.0) - pi * r * r;
  };
  double lo = 0.0;
  double hi = convex_inradius(poly);
  if (!(g(hi) <= 0.0) || !(poly.area() > 0.0)) {
    throw InternalError("bisection bracket for |Omega^r| = pi r^2 is not valid");
  }
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (g(mid) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double r_star = 0.5 * (lo + hi);
  CheegerResult res;
  res.h = 1.0 / r_star;
  res.r_star = r_star;
  res.lower_bound = 1.0 / hi;
  res.upper_bound = lo > 0.0 ? 1.0 / lo : std::numeric_limits<double>::infinity();
  res.method = "inner-parallel-bisection";
  res.tolerance = tol;
  auto core = inner_parallel(poly, r_star);
  if (!core) core = inner_parallel(poly, lo);
  if (core) {
    res.cheeger_set = dilate_by_disc(*core, r_star);
  } else {
    res.warnings.push_back("inner parallel set vanished at r*; Cheeger set omitted");
  }
  return res;
}

double rectangle_h_value(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) throw DomainError("rectangle sides must be positive");
  return (a + b + std::sqrt((a - b) * (a - b) + pi * a * b)) / (2.0 * a * b);
}

double rectangle_k(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) throw DomainError("rectangle sides must be positive");
  const double root = std::sqrt((a - b) * (a - b) + pi * a * b);
  // (a - b) + root cancels for b >> a; use the conjugate form there
  if (a >= b) return (a - b + root) / a;
  return pi * b / (root - (a - b));
}

CheegerResult rectangle_h(double a, double b) {
  const double h = rectangle_h_value(a, b);
  CheegerResult res;
  res.h = h;
  res.r_star = 1.0 / h;
  res.lower_bound = h;
  res.upper_bound = h;
  res.k = rectangle_k(a, b);
  res.method = "closed-form";
  const double r = res.r_star;
  const auto core = ConvexPolygon::make({{-b + r, -a + r}, {b - r, -a + r}, {b - r, a - r}, {-b + r, a - r}});
  res.cheeger_set = dilate_by_disc(core, r);
  return res;
}

}  // namespace cheeger::convex
