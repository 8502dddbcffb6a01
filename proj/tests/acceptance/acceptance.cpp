// Acceptance checks: prints one PASS/FAIL line per criterion and exits nonzero on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "cheeger/certificates.hpp"
#include "cheeger/convex.hpp"
#include "cheeger/opening.hpp"
#include "cheeger/sectors.hpp"
#include "cheeger/strips.hpp"
#include "fixtures.hpp"

using namespace cheeger;
using geometry::Curve;
using geometry::Strip;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail = what;
    pass = pass && ok;
  }
};

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

int failures = 0;

void criterion(int id, const char* title, double budget_s, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o.pass = false;
    o.detail = std::string("exception: ") + e.what();
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (budget_s > 0.0 && secs > budget_s) o.require(false, fmt("runtime %.1f s over budget %.0f s", secs, budget_s));
  if (!o.pass) ++failures;
  std::printf("%s %2d %s (%.2f s)%s%s\n", o.pass ? "PASS" : "FAIL", id, title, secs, o.detail.empty() ? "" : ": ",
              o.detail.c_str());
  std::fflush(stdout);
}

Outcome table_reproduction() {
  Outcome o;
  const double ref_h[] = {5.92687, 2.16358, 1.89111, 1.77915, 1.57714, 1.37582, 1.27722};
  const auto rows = sectors::table1();
  o.require(rows.size() == 7, "expected seven rows");
  for (std::size_t i = 0; i < rows.size() && i < 7; ++i) {
    const double tol = i < 5 ? 5e-4 : 5e-3;
    const double ref_k = (ref_h[i] - 1.0) * rows[i].alpha;
    o.require(std::abs(rows[i].h - ref_h[i]) <= tol, rows[i].label + fmt(" h = %.6f", rows[i].h));
    o.require(std::abs(rows[i].k - ref_k) <= tol * rows[i].alpha, rows[i].label + fmt(" k = %.6f", rows[i].k));
  }
  return o;
}

Outcome rectangle_cross_validation() {
  Outcome o;
  for (auto [a, b] : {std::pair{1.0, 1.0}, std::pair{1.0, 3.0}, std::pair{1.0, 10.0}}) {
    const double closed = fixtures::rectangle_formula(a, b);
    const double cvx = convex::solve_convex(convex::rectangle(a, b)).h;
    const double sw = opening::sweep(convex::rectangle(a, b).to_arc_polygon()).h;
    o.require(std::abs(cvx - closed) <= 1e-9 * closed, fmt("convex solver off at b = %g: %.12f", b, cvx));
    o.require(std::abs(sw - closed) <= 1e-6 * closed, fmt("sweep off at b = %g: %.12f", b, sw));
  }
  return o;
}

Outcome rectangle_limits() {
  Outcome o;
  const double wide = convex::rectangle_k(1.0, 1000.0);
  const double thin = convex::rectangle_k(1.0, 0.001);
  o.require(std::abs(wide - 0.5 * pi) <= 2e-3, fmt("k(1, 1000) = %.6f", wide));
  o.require(std::abs(thin - 2.0) <= 1e-3, fmt("k(1, 0.001) = %.6f", thin));
  double prev = INFINITY;
  for (int i = 0; i < 100; ++i) {
    const double k = convex::rectangle_k(1.0, std::pow(10.0, -3.0 + 6.0 * i / 99.0));
    o.require(k < prev, fmt("k not decreasing at index %g", i));
    prev = k;
  }
  return o;
}

Outcome annulus_exactness() {
  Outcome o;
  const Strip s = Strip::make(Curve::circle({0, 0}, 2.0), 1.0);
  const auto r = strips::strip_cheeger(s);
  o.require(r.h == 1.0, fmt("h = %.17g", r.h));
  // 10^5 chords: half on each boundary circle
  const int n = 50000;
  std::vector<Vec2> outer, inner;
  for (int i = 0; i < n; ++i) {
    const double q = s.curve.length() * i / n;
    outer.push_back(geometry::tube_map(s, q, -1.0));
    inner.push_back(geometry::tube_map(s, q, 1.0));
  }
  const double area = std::abs(fixtures::shoelace(outer)) - std::abs(fixtures::shoelace(inner));
  const double per = fixtures::polyline_perimeter(outer) + fixtures::polyline_perimeter(inner);
  o.require(std::abs(per / area - 1.0) <= 1e-4, fmt("chord P/A = %.9f", per / area));
  o.require(r.cheeger_set.has_value(), "no cheeger set");
  if (r.cheeger_set) {
    const auto whole = geometry::strip_domain(s).metrics();
    const auto got = r.cheeger_set->metrics();
    o.require(r.cheeger_set->holes().size() == 1 && got.area == whole.area && got.perimeter == whole.perimeter,
              "cheeger set is not the whole strip");
  }
  return o;
}

Outcome finite_strip_bracket() {
  Outcome o;
  std::mt19937_64 rng(1001);
  for (int k = 0; k < 10; ++k) {
    const Strip s = fixtures::random_finite_strip(rng);
    const double a = s.halfwidth;
    const double L = s.curve.length();
    const auto r = strips::strip_cheeger(s);
    o.require(r.h >= 1.0 / a + 1.0 / (400.0 * L) - 1e-9, fmt("strip %g: h = %.9f below bracket", k, r.h));
    o.require(r.h <= 1.0 / a + 2.0 / L + 1e-6, fmt("strip %g: h = %.9f above bracket", k, r.h));
    strips::Profile whole;
    whole.q = {0.0, L};
    whole.lower = {{-a, -a}, {-a, -a}};
    whole.upper = {{a, a}, {a, a}};
    const double q = strips::profile_quotient(whole, s);
    o.require(std::abs(q - (1.0 / a + 2.0 / L)) <= 1e-10, fmt("strip %g: whole quotient off by %.3g", k, q - (1.0 / a + 2.0 / L)));
  }
  return o;
}

Outcome stripization_suite() {
  Outcome o;
  std::mt19937_64 rng(2002);
  for (int k = 0; k < 100; ++k) {
    const Strip s = fixtures::random_strip(rng);
    const auto poly = fixtures::random_star_polygon(rng, s);
    const auto rep = strips::stripize(poly, s);
    const double scale = std::max(1.0, rep.original.perimeter);
    o.require(rep.stripized.area >= rep.original.area - 1e-8 * scale * scale, fmt("case %g: area decreased", k));
    o.require(rep.stripized.perimeter <= rep.original.perimeter + 1e-8 * scale, fmt("case %g: perimeter increased", k));
    const auto again = strips::stripize(strips::profile_region(rep.profile), s);
    bool same = again.profile.q.size() == rep.profile.q.size();
    for (std::size_t i = 0; same && i < rep.profile.q.size(); ++i) {
      same = std::abs(again.profile.q[i] - rep.profile.q[i]) <= 1e-12 &&
             std::abs(again.profile.lower.left[i] - rep.profile.lower.left[i]) <= 1e-12 &&
             std::abs(again.profile.lower.right[i] - rep.profile.lower.right[i]) <= 1e-12 &&
             std::abs(again.profile.upper.left[i] - rep.profile.upper.left[i]) <= 1e-12 &&
             std::abs(again.profile.upper.right[i] - rep.profile.upper.right[i]) <= 1e-12;
    }
    o.require(same, fmt("case %g: stripize not idempotent", k));
  }
  return o;
}

double divergence_error(const certificates::GridField& f) {
  const double target = 1.0 / f.strip().halfwidth;
  double worst = 0.0;
  for (std::size_t i = 1; i + 1 < f.n_q(); ++i) {
    for (std::size_t j = 1; j + 1 < f.n_t(); ++j) {
      worst = std::max(worst, std::abs(certificates::divergence(f, i, j) - target));
    }
  }
  return worst;
}

Outcome certificate_suite() {
  Outcome o;
  std::mt19937_64 rng(3003);
  for (int k = 0; k < 20; ++k) {
    const Strip s = fixtures::random_strip(rng);
    const auto field = certificates::GridField::builtin(s, 1024, 1024);
    const auto rep = certificates::certify_lower_bound(field, 1.0 / s.halfwidth);
    o.require(rep.passed, fmt("strip %g: ", k) + rep.reason);
    o.require(rep.sup_v <= 1.0 + 1e-12, fmt("strip %g: sup|V| = %.17g", k, rep.sup_v));
    const double coarse = divergence_error(certificates::GridField::builtin(s, 128, 128));
    const double fine = divergence_error(certificates::GridField::builtin(s, 256, 256));
    o.require(coarse / fine >= 3.5, fmt("strip %g: error ratio %.3f", k, coarse / fine));
  }
  return o;
}

Outcome profile_lower_bound() {
  Outcome o;
  std::mt19937_64 rng(4004);
  for (int k = 0; k < 200; ++k) {
    const Strip s = fixtures::random_strip(rng);
    const auto p = fixtures::random_profile(rng, s);
    const double q = strips::profile_quotient(p, s);
    o.require(q >= 1.0 / s.halfwidth - 1e-9, fmt("profile %g: quotient %.9f below 1/a = %.9f", k, q, 1.0 / s.halfwidth));
  }
  return o;
}

Outcome nested_monotonicity() {
  Outcome o;
  std::mt19937_64 rng(5005);
  for (int k = 0; k < 10; ++k) {
    const double a = fixtures::uniform(rng, 0.3, 2.0);
    const double b = fixtures::uniform(rng, 0.3, 5.0);
    const double ai = a * fixtures::uniform(rng, 0.5, 1.0);
    const double bi = b * fixtures::uniform(rng, 0.5, 1.0);
    const double outer = convex::solve_convex(convex::rectangle(a, b)).h;
    const double inner = convex::solve_convex(convex::rectangle(ai, bi)).h;
    o.require(inner >= outer, fmt("rectangle pair %g: %.9f < %.9f", k, inner, outer));
  }
  sectors::SectorOptions opts;
  opts.grid_check = false;
  for (int k = 0; k < 10; ++k) {
    const double alpha = fixtures::uniform(rng, 0.2, two_pi);
    const double a = fixtures::uniform(rng, 0.5, 2.0);
    const double alpha_i = alpha * fixtures::uniform(rng, 0.5, 1.0);
    const double a_i = a * fixtures::uniform(rng, 0.6, 1.0);
    const double outer = sectors::sector_cheeger({alpha, a}, opts).cheeger.h;
    const double inner = sectors::sector_cheeger({alpha_i, a_i}, opts).cheeger.h;
    o.require(inner >= outer, fmt("sector pair %g: %.9f < %.9f", k, inner, outer));
  }
  return o;
}

Outcome disc_sanity() {
  Outcome o;
  const auto r = convex::solve_convex(convex::regular_polygon(720, 1.0));
  o.require(std::abs(r.h - 2.0) <= 5e-4, fmt("h = %.9f", r.h));
  o.require(std::abs(r.r_star - 0.5) <= 2.5e-4, fmt("r* = %.9f", r.r_star));
  return o;
}

Outcome k_max() {
  Outcome o;
  const auto m = sectors::k_max_scan(1.0, 64);
  o.require(std::abs(m.alpha - 0.656749 * pi) <= 0.01 * pi, fmt("alpha* = %.6f pi", m.alpha / pi));
  o.require(std::abs(m.k - 1.83856) <= 5e-4, fmt("k* = %.6f", m.k));
  return o;
}

}  // namespace

int main() {
  criterion(1, "sector table reproduction", 120.0, table_reproduction);
  criterion(2, "rectangle cross-validation", 5.0, rectangle_cross_validation);
  criterion(3, "rectangle k limits and monotonicity", 0.0, rectangle_limits);
  criterion(4, "annulus exactness", 0.0, annulus_exactness);
  criterion(5, "finite strip bracket", 0.0, finite_strip_bracket);
  criterion(6, "stripization inequalities and idempotence", 30.0, stripization_suite);
  criterion(7, "builtin certificate on random strips", 0.0, certificate_suite);
  criterion(8, "profile quotient lower bound", 0.0, profile_lower_bound);
  criterion(9, "monotonicity under inclusion", 0.0, nested_monotonicity);
  criterion(10, "disc sanity", 0.0, disc_sanity);
  criterion(11, "maximal k over sector angles", 0.0, k_max);
  std::printf("%d of 11 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
