#pragma once

#include <optional>

#include "cheeger/arc_polygon.hpp"
#include "cheeger/curve.hpp"

namespace cheeger::geometry {

enum class StripKind { annulus, finite, semi_infinite, infinite };

const char* to_string(StripKind kind);

/// Tubular neighbourhood of half-width `halfwidth` about `curve`.
///
/// For semi-infinite and infinite strips the stored curve is a finite window of the
/// (unbounded) reference curve; `truncation_length` is the L of the window Gamma_L,
/// whose length is L (semi-infinite) or 2L (infinite).
struct Strip {
  Curve curve;
  double halfwidth = 0.0;
  StripKind kind = StripKind::finite;
  std::optional<double> truncation_length;

  /// Classification defaults from the curve: closed → annulus, open → finite.
  static Strip make(Curve curve, double halfwidth, std::optional<StripKind> kind = std::nullopt,
                    std::optional<double> truncation_length = std::nullopt);

  bool bounded() const { return kind == StripKind::annulus || kind == StripKind::finite; }
  /// |Gamma| for bounded strips, |Gamma_L| for the others (requires truncation_length).
  double gamma_length() const;
};

/// L(q, t) = gamma(q) + t N(q).
Vec2 tube_map(const Strip& strip, double q, double t);

struct AdmissibilityReport {
  double max_kappa_a = 0.0;
  bool curvature_ok = false;
  bool injective = false;
  std::size_t overlapping_cells = 0;

  bool admissible() const { return curvature_ok && injective; }
};

/// Sampled admissibility test: max |kappa| a <= 1 and no two non-adjacent tube cells
/// (quadrilaterals between consecutive sampled normal fibres) overlap.
AdmissibilityReport check_admissible(const Strip& strip, std::size_t n_samples);

/// Planar domain of a bounded strip. Analytic curves give exact arc/segment boundaries,
/// sampled polylines give polygons through L(q_i, +-a). Annuli carry the inner boundary
/// as a hole loop.
ArcPolygon strip_domain(const Strip& strip);

}  // namespace cheeger::geometry
