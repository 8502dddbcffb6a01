#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cheeger/arc_polygon.hpp"

namespace cheeger::opening {

using geometry::ArcPolygon;
using geometry::Metrics;

struct OpeningOptions {
  bool allow_grid_fallback = true;
  int fallback_resolution = 512;
  /// Inradius of the domain if already known (skips the search).
  std::optional<double> inradius;
};

struct OpeningResult {
  std::optional<ArcPolygon> shape;  ///< exact opening; absent when empty or on grid fallback
  Metrics metrics;
  bool empty = false;
  bool grid_fallback = false;
  std::string warning;
};

/// Opening (erosion then dilation by the disc of radius r) of a segment/arc domain. Every
/// corner turning towards the interior is replaced by a tangent arc of radius r; reflex
/// corners and slit tips are kept. r >= inradius gives an empty result.
OpeningResult opening_exact(const ArcPolygon& domain, double r, const OpeningOptions& options = {});

enum class SweepMode { exact, grid };

struct SweepOptions {
  std::size_t n_coarse = 256;
  /// Stopping width of the golden-section bracket in r; <= 0 selects 1e-9 * inradius.
  double tol = 0.0;
  SweepMode mode = SweepMode::exact;
  int grid_resolution = 1024;
  OpeningOptions opening;
};

struct OpeningSweepResult {
  std::vector<double> r_grid;
  std::vector<double> quotients;
  double coarse_r_hat = 0.0;
  double coarse_min = 0.0;
  std::vector<double> local_minima;  ///< r values of coarse local minima
  double r_hat = 0.0;
  double h = 0.0;
  std::optional<ArcPolygon> best_set;
  double inradius = 0.0;
  bool used_fallback = false;
};

/// Minimizes r -> P(S_r)/|S_r| over the opening family: a uniform coarse scan of (0, inradius)
/// followed by golden-section refinement around the coarse minimum.
OpeningSweepResult sweep(const ArcPolygon& domain, const SweepOptions& options = {});

/// P(S_r)/|S_r| for a single r in the chosen mode; nullopt when the opening is empty.
std::optional<double> opening_quotient(const ArcPolygon& domain, double r, const SweepOptions& options);

}  // namespace cheeger::opening
