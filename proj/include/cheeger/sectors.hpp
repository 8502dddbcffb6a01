#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cheeger/arc_polygon.hpp"
#include "cheeger/opening.hpp"
#include "cheeger/result.hpp"

namespace cheeger::sectors {

using geometry::ArcPolygon;

/// Disc sector of radius 2a and opening angle alpha in (0, 2pi]; alpha = 2pi is the disc with
/// a radial slit along the positive x-axis.
struct SectorSpec {
  double alpha = 0.0;
  double a = 1.0;

  void validate() const;
  /// Length alpha * a of the mid-radius arc.
  double gamma_length() const { return alpha * a; }
};

ArcPolygon sector_domain(const SectorSpec& spec);

/// Inradius: 2a sin(alpha/2) / (1 + sin(alpha/2)) for alpha < pi, else a.
double sector_inradius(const SectorSpec& spec);

enum class SectorMethod { exact, grid };

struct SectorOptions {
  SectorMethod method = SectorMethod::exact;
  /// Golden-section stopping width in r; <= 0 selects 1e-8 * a.
  double tol = 0.0;
  std::size_t n_coarse = 256;
  /// Cross-check exact results for alpha > pi against the extrapolated grid oracle.
  bool grid_check = true;
  int grid_base_resolution = 256;
  int grid_resolution = 1024;
};

struct SectorResult {
  CheegerResult cheeger;
  /// h(Omega_1^alpha) = a * h(Omega_a^alpha).
  double h_unit = 0.0;
  std::optional<double> grid_h;
  bool grid_confident = false;
  opening::OpeningSweepResult sweep;
};

SectorResult sector_cheeger(const SectorSpec& spec, const SectorOptions& options = {});

/// k(alpha) = (h - 1/a) alpha a.
double sector_k(const SectorSpec& spec, double h);

struct KMax {
  double alpha = 0.0;
  double k = 0.0;
  std::vector<double> alpha_grid;
  std::vector<double> k_grid;
};

/// Maximizer of alpha -> k(alpha) on (0, 2pi): uniform scan, then golden-section.
KMax k_max_scan(double a, std::size_t n_grid, double tol = 1e-7);

struct Table1Row {
  std::string label;
  double alpha = 0.0;
  double h = 0.0;
  double k = 0.0;
  double reference_h = 0.0;
  double reference_k = 0.0;
  double tolerance = 0.0;  ///< on h; k is held to tolerance * alpha
  bool within_tolerance = false;
};

/// The seven reference angles with the published h and k values for a = 1.
std::vector<Table1Row> table1(const SectorOptions& options = {});

}  // namespace cheeger::sectors
