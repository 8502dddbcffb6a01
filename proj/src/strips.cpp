#include "cheeger/strips.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

namespace cheeger::strips {

using geometry::Curve;
using geometry::CurvaturePiece;
using geometry::StripKind;

namespace {

struct GaussLegendre {
  std::array<double, 16> x{};
  std::array<double, 16> w{};

  GaussLegendre() {
    constexpr int n = 16;
    for (int i = 0; i < n; ++i) {
      double z = std::cos(pi * (i + 0.75) / (n + 0.5));
      double dp = 0.0;
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0;
        double p1 = z;
        for (int k = 2; k <= n; ++k) {
          const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        dp = n * (z * p1 - p0) / (z * z - 1.0);
        const double dz = p1 / dp;
        z -= dz;
        if (std::abs(dz) < 1e-16) break;
      }
      x[static_cast<std::size_t>(i)] = z;
      w[static_cast<std::size_t>(i)] = 2.0 / ((1.0 - z * z) * dp * dp);
    }
  }

  template <class F>
  double integrate(F&& f, double a, double b) const {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += w[i] * f(c + h * x[i]);
    return h * s;
  }
};

const GaussLegendre& gauss() {
  static const GaussLegendre g;
  return g;
}

// Antiderivative of sqrt(u^2 + m^2) in u.
double sqrt_primitive(double u, double m) {
  const double am = std::abs(m);
  return 0.5 * (u * std::hypot(u, m) + m * m * std::asinh(u / am));
}

double line_at(Vec2 a, Vec2 b, double q) {
  if (q == a.x) return a.y;
  if (q == b.x) return b.y;
  return a.y + (b.y - a.y) * (q - a.x) / (b.x - a.x);
}

// Integral of t - kappa t^2 / 2 along the (q, t)-segment, in the direction a -> b.
double green_term(const Curve& curve, Vec2 a, Vec2 b) {
  if (a.x == b.x) return 0.0;
  const double sign = b.x > a.x ? 1.0 : -1.0;
  const Vec2 lo = sign > 0 ? a : b;
  const Vec2 hi = sign > 0 ? b : a;
  double total = 0.0;
  for (const CurvaturePiece& k : curve.curvature_pieces(lo.x, hi.x)) {
    // the integrand is a cubic in q on each piece, so Simpson's rule is exact
    auto f = [&](double q) {
      const double t = line_at(lo, hi, q);
      return t - 0.5 * k.at(q) * t * t;
    };
    const double mid = 0.5 * (k.q0 + k.q1);
    total += (k.q1 - k.q0) / 6.0 * (f(k.q0) + 4.0 * f(mid) + f(k.q1));
  }
  return sign * total;
}

double polygon_signed_area_qt(std::span<const Vec2> p) {
  double a = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) a += cross(p[i], p[(i + 1) % p.size()]);
  return 0.5 * a;
}

bool segments_touch(Vec2 p1, Vec2 p2, Vec2 q1, Vec2 q2) {
  auto orient = [](Vec2 a, Vec2 b, Vec2 c) {
    const double v = cross(b - a, c - a);
    return (v > 0) - (v < 0);
  };
  auto on_segment = [](Vec2 a, Vec2 b, Vec2 c) {
    return std::min(a.x, b.x) <= c.x && c.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= c.y &&
           c.y <= std::max(a.y, b.y);
  };
  if (std::max(p1.x, p2.x) < std::min(q1.x, q2.x) || std::max(q1.x, q2.x) < std::min(p1.x, p2.x) ||
      std::max(p1.y, p2.y) < std::min(q1.y, q2.y) || std::max(q1.y, q2.y) < std::min(p1.y, p2.y)) {
    return false;
  }
  const int o1 = orient(p1, p2, q1);
  const int o2 = orient(p1, p2, q2);
  const int o3 = orient(q1, q2, p1);
  const int o4 = orient(q1, q2, p2);
  if (o1 != o2 && o3 != o4) return true;
  if (o1 == 0 && on_segment(p1, p2, q1)) return true;
  if (o2 == 0 && on_segment(p1, p2, q2)) return true;
  if (o3 == 0 && on_segment(q1, q2, p1)) return true;
  if (o4 == 0 && on_segment(q1, q2, p2)) return true;
  return false;
}

void validate_polygon(std::span<const Vec2> poly, const Strip& strip) {
  const std::size_t n = poly.size();
  if (n < 3) throw ValidationError("polygon needs at least 3 vertices");
  const double a = strip.halfwidth;
  const double len = strip.curve.length();
  for (const Vec2& p : poly) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) throw ValidationError("non-finite vertex");
    if (std::abs(p.y) > a * (1.0 + 1e-12)) throw ValidationError("polygon leaves the band |t| <= a");
    if (p.x < -1e-12 * len || p.x > len * (1.0 + 1e-12)) {
      throw ValidationError("polygon leaves the curve's arclength interval");
    }
  }
  if (!(std::abs(polygon_signed_area_qt(poly)) > 0.0)) throw ValidationError("polygon has zero area");
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const bool adjacent = j == i + 1 || (i == 0 && j == n - 1);
      if (adjacent) {
        // adjacent edges may only share their common vertex
        const Vec2 shared = j == i + 1 ? poly[j] : poly[0];
        const Vec2 u = j == i + 1 ? poly[i] : poly[n - 1];
        const Vec2 v = j == i + 1 ? poly[(j + 1) % n] : poly[1];
        if (cross(u - shared, v - shared) == 0.0 && dot(u - shared, v - shared) > 0.0) {
          throw ValidationError("polygon folds back on itself");
        }
        continue;
      }
      if (segments_touch(poly[i], poly[(i + 1) % n], poly[j], poly[(j + 1) % n])) {
        throw ValidationError("polygon is not simple");
      }
    }
  }
}

}  // namespace

std::vector<Jump> Profile::lower_jumps() const {
  std::vector<Jump> out;
  for (std::size_t i = 1; i + 1 < q.size(); ++i) {
    if (lower.left[i] != lower.right[i]) out.push_back({q[i], lower.left[i], lower.right[i]});
  }
  return out;
}

std::vector<Jump> Profile::upper_jumps() const {
  std::vector<Jump> out;
  for (std::size_t i = 1; i + 1 < q.size(); ++i) {
    if (upper.left[i] != upper.right[i]) out.push_back({q[i], upper.left[i], upper.right[i]});
  }
  return out;
}

double Profile::t_minus() const {
  double m = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < q.size(); ++i) m = std::min({m, lower.left[i], lower.right[i]});
  return m;
}

double Profile::t_plus() const {
  double m = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < q.size(); ++i) m = std::max({m, upper.left[i], upper.right[i]});
  return m;
}

void Profile::validate(const Strip& strip) const {
  const std::size_t n = q.size();
  if (n < 2) throw ValidationError("profile needs at least two breakpoints");
  if (lower.left.size() != n || lower.right.size() != n || upper.left.size() != n ||
      upper.right.size() != n) {
    throw ValidationError("profile arrays differ in length");
  }
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (!(q[i + 1] > q[i])) throw ValidationError("profile breakpoints must increase strictly");
  }
  const double len = strip.curve.length();
  if (q.front() < -1e-12 * len || q.back() > len * (1.0 + 1e-12)) {
    throw ValidationError("profile leaves the curve's arclength interval");
  }
  const double a = strip.halfwidth;
  const double eps = 1e-12 * a;
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& [lo, hi] : {std::pair{lower.left[i], upper.left[i]}, std::pair{lower.right[i], upper.right[i]}}) {
      if (!std::isfinite(lo) || !std::isfinite(hi)) throw ValidationError("profile value is not finite");
      if (lo < -a - eps || hi > a + eps || lo > hi + eps) {
        throw ValidationError("profile violates -a <= f- <= f+ <= a");
      }
    }
  }
}

double curved_length(const Curve& curve, Vec2 from, Vec2 to) {
  if (from.x == to.x) return std::abs(to.y - from.y);
  const Vec2 lo = from.x < to.x ? from : to;
  const Vec2 hi = from.x < to.x ? to : from;
  const double m = (hi.y - lo.y) / (hi.x - lo.x);
  double total = 0.0;
  for (const CurvaturePiece& k : curve.curvature_pieces(lo.x, hi.x)) {
    const double ta = line_at(lo, hi, k.q0);
    const double tb = line_at(lo, hi, k.q1);
    if (k.constant()) {
      const double u0 = 1.0 - k.kappa0 * ta;
      const double u1 = 1.0 - k.kappa0 * tb;
      // closed form unless u barely changes, where the difference of primitives cancels
      if (m != 0.0 && std::abs(u1 - u0) >= 1e-2 * std::hypot(u0, m)) {
        total += (sqrt_primitive(u1, m) - sqrt_primitive(u0, m)) / (-k.kappa0 * m);
        continue;
      }
    }
    total += gauss().integrate(
        [&](double q) {
          const double u = 1.0 - k.at(q) * line_at(lo, hi, q);
          return std::hypot(u, m);
        },
        k.q0, k.q1);
  }
  return total;
}

Metrics curved_polygon_metrics(std::span<const Vec2> polygon_qt, const Strip& strip) {
  Metrics m;
  double green = 0.0;
  for (std::size_t i = 0; i < polygon_qt.size(); ++i) {
    const Vec2 a = polygon_qt[i];
    const Vec2 b = polygon_qt[(i + 1) % polygon_qt.size()];
    m.perimeter += curved_length(strip.curve, a, b);
    green += green_term(strip.curve, a, b);
  }
  m.area = std::abs(green);
  return m;
}

Metrics profile_metrics(const Profile& profile, const Strip& strip) {
  profile.validate(strip);
  const Curve& c = strip.curve;
  const auto& q = profile.q;
  const std::size_t n = q.size() - 1;
  Metrics m;
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 l0{q[i], profile.lower.right[i]};
    const Vec2 l1{q[i + 1], profile.lower.left[i + 1]};
    const Vec2 u0{q[i], profile.upper.right[i]};
    const Vec2 u1{q[i + 1], profile.upper.left[i + 1]};
    m.area += green_term(c, u0, u1) - green_term(c, l0, l1);
    m.perimeter += curved_length(c, l0, l1) + curved_length(c, u0, u1);
  }
  for (std::size_t i = 1; i < n; ++i) {
    m.perimeter += std::abs(profile.lower.jump(i)) + std::abs(profile.upper.jump(i));
  }
  const double span_tol = 1e-12 * std::max(1.0, c.length());
  if (c.closed() && std::abs(q.front()) <= span_tol && std::abs(q.back() - c.length()) <= span_tol) {
    // the two end fibres are the same fibre: only the mismatch across it is boundary
    m.perimeter += std::abs(profile.lower.right[0] - profile.lower.left[n]) +
                   std::abs(profile.upper.right[0] - profile.upper.left[n]);
  } else {
    m.perimeter += (profile.upper.right[0] - profile.lower.right[0]) +
                   (profile.upper.left[n] - profile.lower.left[n]);
  }
  return m;
}

double profile_quotient(const Profile& profile, const Strip& strip) {
  const Metrics m = profile_metrics(profile, strip);
  if (!(m.area > 0.0)) throw DomainError("profile encloses zero area");
  return m.quotient();
}

std::vector<Vec2> profile_region(const Profile& profile) {
  const auto& q = profile.q;
  const std::size_t n = q.size() - 1;
  std::vector<Vec2> pts;
  for (std::size_t i = 0; i <= n; ++i) {
    if (i > 0) pts.push_back({q[i], profile.lower.left[i]});
    if (i < n) pts.push_back({q[i], profile.lower.right[i]});
  }
  for (std::size_t k = 0; k <= n; ++k) {
    const std::size_t i = n - k;
    if (i < n) pts.push_back({q[i], profile.upper.right[i]});
    if (i > 0) pts.push_back({q[i], profile.upper.left[i]});
  }
  std::vector<Vec2> out;
  for (const Vec2& p : pts) {
    if (out.empty() || !(out.back() == p)) out.push_back(p);
  }
  while (out.size() > 1 && out.front() == out.back()) out.pop_back();
  return out;
}

StripizeReport stripize(std::span<const Vec2> polygon_qt, const Strip& strip) {
  validate_polygon(polygon_qt, strip);
  const std::size_t n = polygon_qt.size();
  double qmin = std::numeric_limits<double>::infinity();
  double qmax = -qmin;
  std::vector<double> qs;
  for (const Vec2& p : polygon_qt) {
    qs.push_back(p.x);
    qmin = std::min(qmin, p.x);
    qmax = std::max(qmax, p.x);
  }
  for (double b : strip.curve.breakpoints()) {
    if (b > qmin && b < qmax) qs.push_back(b);
  }
  std::sort(qs.begin(), qs.end());
  const double merge = 1e-14 * std::max(1.0, qmax - qmin);
  std::vector<double> bq;
  for (double v : qs) {
    if (bq.empty() || v - bq.back() > merge) bq.push_back(v);
  }
  if (bq.back() != qmax) bq.back() = qmax;
  if (bq.size() < 2) throw ValidationError("polygon has no extent along the curve");

  const std::size_t slabs = bq.size() - 1;
  Profile pr;
  pr.q = bq;
  pr.lower.left.assign(bq.size(), 0.0);
  pr.lower.right.assign(bq.size(), 0.0);
  pr.upper.left.assign(bq.size(), 0.0);
  pr.upper.right.assign(bq.size(), 0.0);
  const double a = strip.halfwidth;
  for (std::size_t s = 0; s < slabs; ++s) {
    const double mid = 0.5 * (bq[s] + bq[s + 1]);
    std::size_t top = n;
    std::size_t bottom = n;
    double t_top = -std::numeric_limits<double>::infinity();
    double t_bottom = std::numeric_limits<double>::infinity();
    for (std::size_t e = 0; e < n; ++e) {
      const Vec2 p = polygon_qt[e];
      const Vec2 r = polygon_qt[(e + 1) % n];
      if (!(std::min(p.x, r.x) < mid && mid < std::max(p.x, r.x))) continue;
      const double t = line_at(p, r, mid);
      if (t > t_top) {
        t_top = t;
        top = e;
      }
      if (t < t_bottom) {
        t_bottom = t;
        bottom = e;
      }
    }
    if (top == n || bottom == n) throw ValidationError("polygon is disconnected along the curve");
    auto eval = [&](std::size_t e, double q) {
      const double t = line_at(polygon_qt[e], polygon_qt[(e + 1) % n], q);
      return std::clamp(t, -a, a);
    };
    pr.upper.right[s] = eval(top, bq[s]);
    pr.upper.left[s + 1] = eval(top, bq[s + 1]);
    pr.lower.right[s] = eval(bottom, bq[s]);
    pr.lower.left[s + 1] = eval(bottom, bq[s + 1]);
  }
  pr.upper.left[0] = pr.upper.right[0];
  pr.lower.left[0] = pr.lower.right[0];
  pr.upper.right[slabs] = pr.upper.left[slabs];
  pr.lower.right[slabs] = pr.lower.left[slabs];

  StripizeReport rep;
  rep.stripized = profile_metrics(pr, strip);
  rep.original = curved_polygon_metrics(polygon_qt, strip);
  rep.profile = std::move(pr);
  return rep;
}

Metrics strip_area_perimeter(const Strip& strip) {
  const double a = strip.halfwidth;
  const double len = strip.gamma_length();
  if (strip.kind == StripKind::annulus) return {2.0 * len, 2.0 * a * len};
  return {2.0 * len + 4.0 * a, 2.0 * a * len};
}

double truncation_ratio(const Strip& strip, double L) {
  if (strip.bounded()) throw DomainError("truncation ratio applies to non-finite strips only");
  if (!(L > 0.0)) throw DomainError("truncation length must be positive");
  const double a = strip.halfwidth;
  const double len = strip.kind == StripKind::infinite ? 2.0 * L : L;
  return (4.0 * a + 2.0 * len) / (2.0 * a * len);
}

CheegerResult strip_cheeger(const Strip& strip, const StripCheegerOptions& options) {
  const auto adm = geometry::check_admissible(strip, options.admissibility_samples);
  if (!adm.admissible()) {
    throw ValidationError(adm.curvature_ok ? "strip tube map is not injective"
                                           : "strip violates |kappa| a <= 1");
  }
  const double a = strip.halfwidth;
  CheegerResult res;
  res.h = 1.0 / a;
  res.r_star = a;
  res.lower_bound = res.upper_bound = res.h;
  res.tolerance = 0.0;
  if (strip.kind == StripKind::annulus) {
    res.method = "annulus-exact";
    res.cheeger_set = geometry::strip_domain(strip);
    res.k = 0.0;
    return res;
  }
  if (strip.kind != StripKind::finite) {
    res.method = "non-finite-exact";
    res.warnings.push_back("the infimum is not attained; no Cheeger set");
    return res;
  }

  const double len = strip.curve.length();
  res.lower_bound = 1.0 / a + 1.0 / (400.0 * len);
  res.upper_bound = 1.0 / a + 2.0 / len;
  const auto domain = geometry::strip_domain(strip);
  opening::SweepOptions sweep = options.sweep;
  if (strip.curve.kind() == geometry::CurveKind::sampled_polyline) {
    sweep.mode = opening::SweepMode::grid;
  }
  if (!(sweep.tol > 0.0)) sweep.tol = 1e-9 * a;
  const auto sw = opening::sweep(domain, sweep);
  res.h = sw.h;
  res.r_star = 1.0 / sw.h;
  res.cheeger_set = sw.best_set;
  res.k = (sw.h - 1.0 / a) * len;
  res.tolerance = sweep.tol;
  res.method = sweep.mode == opening::SweepMode::grid ? "opening-sweep-grid" : "opening-sweep";
  if (sw.used_fallback) res.warnings.push_back("grid fallback used for some openings");
  if (sw.h < res.lower_bound - 1e-9 || sw.h > res.upper_bound + 1e-6) {
    res.warnings.push_back("sweep value lies outside the finite-strip bracket");
  }
  return res;
}

}  // namespace cheeger::strips
