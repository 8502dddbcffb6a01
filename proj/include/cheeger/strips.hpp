#pragma once

#include <span>
#include <vector>

#include "cheeger/arc_polygon.hpp"
#include "cheeger/opening.hpp"
#include "cheeger/result.hpp"
#include "cheeger/strip.hpp"

namespace cheeger::strips {

using geometry::Metrics;
using geometry::Strip;

/// One side (f- or f+) of a profile: the limits from the left and from the right at
/// every breakpoint. The profile is linear between consecutive breakpoints, from
/// right[i] to left[i + 1]; left[0] == right[0] and right.back() == left.back().
struct ProfileSide {
  std::vector<double> left;
  std::vector<double> right;

  double jump(std::size_t i) const { return right[i] - left[i]; }
};

struct Jump {
  double q;
  double left;
  double right;
};

/// Piecewise-linear BV pair (f-, f+) over [q.front(), q.back()] with explicit jumps.
struct Profile {
  std::vector<double> q;
  ProfileSide lower;
  ProfileSide upper;

  std::size_t slabs() const { return q.empty() ? 0 : q.size() - 1; }
  std::vector<Jump> lower_jumps() const;
  std::vector<Jump> upper_jumps() const;
  /// inf f- and sup f+.
  double t_minus() const;
  double t_plus() const;
  /// Throws ValidationError unless breakpoints increase and -a <= f- <= f+ <= a.
  void validate(const Strip& strip) const;
};

/// Curved length of the straight (q, t)-segment between two points, under the metric
/// (1 - kappa t)^2 dq^2 + dt^2.
double curved_length(const geometry::Curve& curve, Vec2 from, Vec2 to);

/// Perimeter and area of the planar image of a simple (q, t)-polygon.
Metrics curved_polygon_metrics(std::span<const Vec2> polygon_qt, const Strip& strip);

/// Perimeter (BV formula with jumps and end fibres) and area of the set between the profiles.
Metrics profile_metrics(const Profile& profile, const Strip& strip);

/// P(S*) / |S*|.
double profile_quotient(const Profile& profile, const Strip& strip);

/// Region between the profiles as a counterclockwise (q, t)-polygon.
std::vector<Vec2> profile_region(const Profile& profile);

struct StripizeReport {
  Profile profile;
  Metrics stripized;  ///< S*
  Metrics original;   ///< S
};

/// Fills a set along the normal fibres between its lower and upper profiles.
StripizeReport stripize(std::span<const Vec2> polygon_qt, const Strip& strip);

/// P = 2|Gamma| + 4a (finite) or 2|Gamma| (annulus), A = 2a|Gamma|. Non-finite strips use
/// their truncated window Gamma_L.
Metrics strip_area_perimeter(const Strip& strip);

/// Quotient of the truncated strip Omega_{Gamma_L, a}: (4a + 2|Gamma_L|) / (2a|Gamma_L|).
double truncation_ratio(const Strip& strip, double L);

struct StripCheegerOptions {
  opening::SweepOptions sweep;
  std::size_t admissibility_samples = 256;
};

/// Annulus: h = 1/a, Cheeger set = the strip. Infinite kinds: h = 1/a, no Cheeger set.
/// Finite: bounds 1/a + 1/(400|Gamma|) <= h <= 1/a + 2/|Gamma| and h from an opening sweep.
CheegerResult strip_cheeger(const Strip& strip, const StripCheegerOptions& options = {});

}  // namespace cheeger::strips
