#include <doctest.h>

#include <cmath>
#include <vector>

#include "cheeger/convex.hpp"
#include "cheeger/sectors.hpp"
#include "fixtures.hpp"

using namespace cheeger;
using namespace cheeger::sectors;

namespace {

SectorOptions fast() {
  SectorOptions o;
  o.grid_check = false;
  return o;
}

}  // namespace

TEST_SUITE("sectors") {
  TEST_CASE("sector domains") {
    const auto quarter = sector_domain({0.5 * pi, 1.0}).metrics();
    CHECK(quarter.perimeter == doctest::Approx(4.0 + pi).epsilon(1e-14));
    CHECK(quarter.area == doctest::Approx(pi).epsilon(1e-14));
    const auto half = sector_domain({pi, 1.0}).metrics();
    CHECK(half.perimeter == doctest::Approx(4.0 + two_pi).epsilon(1e-14));
    CHECK(half.area == doctest::Approx(two_pi).epsilon(1e-14));
    const auto slit = sector_domain({two_pi, 1.0}).metrics();
    CHECK(slit.perimeter == doctest::Approx(4.0 * pi + 4.0).epsilon(1e-14));
    CHECK(slit.area == doctest::Approx(4.0 * pi).epsilon(1e-14));
    CHECK_THROWS_AS(sector_domain({0.0, 1.0}), ValidationError);
    CHECK_THROWS_AS(sector_domain({7.0, 1.0}), ValidationError);
    CHECK_THROWS_AS(sector_domain({1.0, -1.0}), ValidationError);
  }

  TEST_CASE("sector inradius") {
    CHECK(sector_inradius({pi, 1.0}) == 1.0);
    CHECK(sector_inradius({1.5 * pi, 2.0}) == 2.0);
    const double s = std::sin(0.25 * pi);
    CHECK(sector_inradius({0.5 * pi, 1.0}) == doctest::Approx(2.0 * s / (1.0 + s)).epsilon(1e-15));
    CHECK(geometry::inradius(sector_domain({0.5 * pi, 1.0})).radius ==
          doctest::Approx(2.0 * s / (1.0 + s)).epsilon(1e-6));
  }

  TEST_CASE("published sector constants") {
    const auto q = sector_cheeger({0.5 * pi, 1.0});
    CHECK(std::abs(q.cheeger.h - 2.16358) < 5e-4);
    CHECK(std::abs(*q.cheeger.k - 1.82774) < 5e-4 * 0.5 * pi);
    const auto h = sector_cheeger({pi, 1.0});
    CHECK(std::abs(h.cheeger.h - 1.57714) < 5e-4);
    CHECK(std::abs(*h.cheeger.k - 1.81315) < 5e-4 * pi);
    const auto d = sector_cheeger({two_pi, 1.0});
    CHECK(std::abs(d.cheeger.h - 1.27722) < 5e-3);
    CHECK(std::abs(*d.cheeger.k - 1.74184) < 5e-3 * two_pi);
    REQUIRE(d.grid_h.has_value());
    CHECK(std::abs(*d.grid_h - d.cheeger.h) < 5e-3);
  }

  TEST_CASE("sector constants match the trigonometric formula") {
    for (double alpha : {0.1 * pi, 0.5 * pi, 0.656749 * pi, 0.75 * pi, pi, 1.5 * pi, 2.0 * pi}) {
      const auto r = sector_cheeger({alpha, 1.0}, fast());
      CHECK(r.cheeger.h == doctest::Approx(fixtures::sector_h_formula(alpha, 1.0)).epsilon(1e-9));
    }
  }

  TEST_CASE("k identity and bounds") {
    for (double alpha : {0.2, 1.0, 2.0, 3.0, 4.0, 5.5, two_pi}) {
      for (double a : {0.5, 1.0, 3.0}) {
        const auto r = sector_cheeger({alpha, a}, fast());
        CHECK(*r.cheeger.k == doctest::Approx((r.cheeger.h - 1.0 / a) * alpha * a).epsilon(1e-12));
        CHECK(sector_k({alpha, a}, r.cheeger.h) == *r.cheeger.k);
        CHECK(r.cheeger.h > 1.0 / a);
        CHECK(r.cheeger.h <= 1.0 / a + 2.0 / (alpha * a) + 5e-3);
        CHECK(r.h_unit == doctest::Approx(a * r.cheeger.h).epsilon(1e-12));
      }
    }
  }

  TEST_CASE("h decreases with the opening angle") {
    double prev = 1e300;
    for (const auto& row : table1(fast())) {
      CHECK(row.h < prev);
      prev = row.h;
    }
  }

  TEST_CASE("convex sectors against a fine polygon") {
    for (double alpha : {0.1 * pi, 0.4 * pi, 0.75 * pi, pi}) {
      std::vector<Vec2> v{{0, 0}};
      const int n = 4096;
      for (int i = 0; i <= n; ++i) v.push_back(2.0 * unit_at(alpha * i / n));
      const auto poly = convex::solve_convex(convex::ConvexPolygon::make(v));
      const auto r = sector_cheeger({alpha, 1.0}, fast());
      CHECK(std::abs(r.cheeger.h - poly.h) < 5e-4);
    }
  }

  TEST_CASE("maximal k") {
    const auto k1 = k_max_scan(1.0, 64);
    CHECK(std::abs(k1.alpha - 0.656749 * pi) < 0.01 * pi);
    CHECK(std::abs(k1.k - 1.83856) < 5e-4);
    const auto k2 = k_max_scan(2.0, 64);
    CHECK(k2.alpha == doctest::Approx(k1.alpha).epsilon(1e-5));
    CHECK(k2.k == doctest::Approx(k1.k).epsilon(1e-9));
    CHECK(k1.alpha_grid.size() == k1.k_grid.size());
  }

  TEST_CASE("table rows") {
    const auto rows = table1();
    REQUIRE(rows.size() == 7);
    for (const auto& row : rows) CHECK_MESSAGE(row.within_tolerance, row.label);
    CHECK(std::abs(rows[0].h - 5.92687) < 5e-4);
    CHECK(std::abs(rows[0].k - 1.54782) < 5e-4 * rows[0].alpha);
    CHECK(std::abs(rows[3].h - 1.77915) < 5e-4);
    CHECK(std::abs(rows[3].k - 1.83583) < 5e-4 * rows[3].alpha);
    CHECK(std::abs(rows[5].h - 1.37582) < 5e-3);
    CHECK(std::abs(rows[5].k - 1.77101) < 5e-3 * rows[5].alpha);
  }

  TEST_CASE("nested sectors") {
    for (double alpha : {0.3, 1.2, 2.5, 4.0}) {
      const auto outer = sector_cheeger({alpha, 1.0}, fast());
      const auto narrower = sector_cheeger({0.8 * alpha, 1.0}, fast());
      const auto smaller = sector_cheeger({alpha, 0.7}, fast());
      CHECK(narrower.cheeger.h >= outer.cheeger.h);
      CHECK(smaller.cheeger.h >= outer.cheeger.h);
    }
  }
}
