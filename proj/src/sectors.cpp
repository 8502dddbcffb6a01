#include "cheeger/sectors.hpp"

#include <algorithm>
#include <cmath>

#include "cheeger/parallel.hpp"
#include "cheeger/raster.hpp"

namespace cheeger::sectors {

using geometry::EdgeRole;
using geometry::Loop;

void SectorSpec::validate() const {
  if (!(alpha > 0.0) || alpha > two_pi * (1.0 + 1e-15)) {
    throw ValidationError("sector angle must lie in (0, 2pi]");
  }
  if (!(a > 0.0)) throw ValidationError("sector parameter a must be positive");
}

ArcPolygon sector_domain(const SectorSpec& spec) {
  spec.validate();
  const double R = 2.0 * spec.a;
  const Vec2 o{0.0, 0.0};
  Loop loop;
  if (spec.alpha >= two_pi) {
    loop.push_back({Segment{o, {R, 0.0}}, EdgeRole::slit});
    loop.push_back({Arc{o, R, 0.0, two_pi}, EdgeRole::boundary});
    loop.push_back({Segment{{R, 0.0}, o}, EdgeRole::slit});
  } else {
    loop.push_back({Segment{o, {R, 0.0}}, EdgeRole::boundary});
    loop.push_back({Arc{o, R, 0.0, spec.alpha}, EdgeRole::boundary});
    loop.push_back({Segment{R * unit_at(spec.alpha), o}, EdgeRole::boundary});
  }
  return ArcPolygon(std::move(loop));
}

double sector_inradius(const SectorSpec& spec) {
  spec.validate();
  if (spec.alpha >= pi) return spec.a;
  const double s = std::sin(0.5 * spec.alpha);
  return 2.0 * spec.a * s / (1.0 + s);
}

double sector_k(const SectorSpec& spec, double h) { return (h - 1.0 / spec.a) * spec.alpha * spec.a; }

SectorResult sector_cheeger(const SectorSpec& spec, const SectorOptions& options) {
  const auto domain = sector_domain(spec);
  opening::SweepOptions sw;
  sw.n_coarse = options.n_coarse;
  sw.tol = options.tol > 0.0 ? options.tol : 1e-8 * spec.a;
  sw.opening.inradius = sector_inradius(spec);
  sw.mode = options.method == SectorMethod::grid ? opening::SweepMode::grid : opening::SweepMode::exact;
  sw.grid_resolution = options.grid_resolution;

  SectorResult out;
  out.sweep = opening::sweep(domain, sw);
  CheegerResult& res = out.cheeger;
  res.h = out.sweep.h;
  res.method = options.method == SectorMethod::grid ? "opening-sweep-grid" : "opening-sweep";
  res.tolerance = sw.tol;

  if (options.method == SectorMethod::grid) {
    const auto g = raster::grid_opening_extrapolated(domain, out.sweep.r_hat, options.grid_resolution / 4);
    if (g) {
      res.h = g->quotient.value;
      out.grid_h = res.h;
      out.grid_confident = g->quotient.confident;
      if (!g->quotient.confident) res.warnings.push_back("grid extrapolation is not monotone");
    }
  } else {
    res.cheeger_set = out.sweep.best_set;
    if (out.sweep.used_fallback) res.warnings.push_back("grid fallback used for some openings");
    if (options.grid_check && spec.alpha > pi) {
      const auto g = raster::grid_opening_extrapolated(domain, out.sweep.r_hat, options.grid_base_resolution);
      if (g) {
        out.grid_h = g->quotient.value;
        out.grid_confident = g->quotient.confident;
        if (std::abs(*out.grid_h - res.h) > 5e-3 * res.h) {
          res.warnings.push_back("exact opening disagrees with the grid oracle beyond 5e-3");
        }
      }
    }
  }
  res.r_star = 1.0 / res.h;
  res.lower_bound = 1.0 / spec.a;
  res.upper_bound = 1.0 / spec.a + 2.0 / spec.gamma_length();
  res.k = sector_k(spec, res.h);
  out.h_unit = res.h * spec.a;
  return out;
}

KMax k_max_scan(double a, std::size_t n_grid, double tol) {
  if (n_grid < 32) throw DomainError("k scan needs at least 32 grid points");
  if (!(a > 0.0)) throw DomainError("a must be positive");
  SectorOptions opts;
  opts.grid_check = false;
  opts.n_coarse = 64;
  auto k_of = [&](double alpha) {
    const SectorSpec spec{alpha, a};
    return sector_k(spec, sector_cheeger(spec, opts).cheeger.h);
  };
  KMax out;
  out.alpha_grid.resize(n_grid);
  out.k_grid.resize(n_grid);
  for (std::size_t i = 0; i < n_grid; ++i) {
    out.alpha_grid[i] = two_pi * static_cast<double>(i + 1) / static_cast<double>(n_grid + 1);
  }
  parallel_for(n_grid, [&](std::size_t i) { out.k_grid[i] = k_of(out.alpha_grid[i]); });
  const auto best = static_cast<std::size_t>(
      std::max_element(out.k_grid.begin(), out.k_grid.end()) - out.k_grid.begin());
  double lo = best > 0 ? out.alpha_grid[best - 1] : 0.5 * out.alpha_grid[0];
  double hi = best + 1 < n_grid ? out.alpha_grid[best + 1] : two_pi;
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = hi - g * (hi - lo);
  double x2 = lo + g * (hi - lo);
  double f1 = k_of(x1);
  double f2 = k_of(x2);
  while (hi - lo > tol) {
    if (f1 >= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - g * (hi - lo);
      f1 = k_of(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + g * (hi - lo);
      f2 = k_of(x2);
    }
  }
  out.alpha = f1 >= f2 ? x1 : x2;
  out.k = std::max(f1, f2);
  if (out.k_grid[best] > out.k) {
    out.k = out.k_grid[best];
    out.alpha = out.alpha_grid[best];
  }
  return out;
}

std::vector<Table1Row> table1(const SectorOptions& options) {
  std::vector<Table1Row> rows{
      {"pi/10", pi / 10.0, 0, 0, 5.92687, 1.54782, 5e-4, false},
      {"pi/2", pi / 2.0, 0, 0, 2.16358, 1.82774, 5e-4, false},
      {"0.656749*pi", 0.656749 * pi, 0, 0, 1.89111, 1.83856, 5e-4, false},
      {"3*pi/4", 0.75 * pi, 0, 0, 1.77915, 1.83583, 5e-4, false},
      {"pi", pi, 0, 0, 1.57714, 1.81315, 5e-4, false},
      {"3*pi/2", 1.5 * pi, 0, 0, 1.37582, 1.77101, 5e-3, false},
      {"2*pi", two_pi, 0, 0, 1.27722, 1.74184, 5e-3, false},
  };
  parallel_for(rows.size(), [&](std::size_t i) {
    Table1Row& row = rows[i];
    const SectorSpec spec{row.alpha, 1.0};
    const auto res = sector_cheeger(spec, options);
    row.h = res.cheeger.h;
    row.k = *res.cheeger.k;
    row.within_tolerance = std::abs(row.h - row.reference_h) <= row.tolerance &&
                           std::abs(row.k - row.reference_k) <= row.tolerance * row.alpha;
  });
  return rows;
}

}  // namespace cheeger::sectors
