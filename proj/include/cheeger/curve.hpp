#pragma once

#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "cheeger/primitives.hpp"

namespace cheeger::geometry {

enum class CurveKind {
  segment,
  circular_arc,
  full_circle,
  sampled_polyline,
  composite,  ///< G1 chain of segments and arcs (an arc spline)
};

/// Curvature on a q-interval, linear between the two end values.
struct CurvaturePiece {
  double q0 = 0.0;
  double q1 = 0.0;
  double kappa0 = 0.0;
  double kappa1 = 0.0;

  bool constant() const { return kappa0 == kappa1; }
  double at(double q) const {
    return q1 > q0 ? kappa0 + (kappa1 - kappa0) * (q - q0) / (q1 - q0) : kappa0;
  }
};

/// Unit-speed planar curve. The normal is the tangent rotated by +pi/2 and the
/// curvature is signed with respect to it (counterclockwise circles are positive).
class Curve {
 public:
  static Curve segment(Vec2 start, Vec2 end);
  /// `span` is signed; its sign gives the orientation.
  static Curve arc(Vec2 center, double radius, double start_angle, double span);
  static Curve circle(Vec2 center, double radius, bool counterclockwise = true,
                      double start_angle = 0.0);
  /// Samples are taken as an arclength parametrization; consecutive tangents may turn by
  /// at most 0.1 rad.
  static Curve polyline(std::vector<Vec2> samples, bool closed = false);
  /// Pieces must join with matching endpoints and tangents; the chain closes itself when
  /// the last end meets the first start.
  static Curve composite(std::vector<Piece> pieces);
  /// Resamples a parametric curve f(t), t in [t0, t1], into `n` samples equally spaced
  /// in arclength.
  static Curve sample_unit_speed(const std::function<Vec2(double)>& f, double t0, double t1,
                                 std::size_t n);

  CurveKind kind() const { return kind_; }
  bool closed() const { return closed_; }
  double length() const { return length_; }

  Vec2 point(double q) const;
  Vec2 tangent(double q) const;
  Vec2 normal(double q) const { return perp(tangent(q)); }
  /// Signed curvature. Polylines: three-point central differences, linearly interpolated
  /// between samples; q closer than one sample to an open end is a domain error.
  double curvature(double q) const;
  /// Interval on which `curvature` is defined.
  std::pair<double, double> curvature_domain() const;
  /// Like `curvature` but clamped into `curvature_domain()`.
  double curvature_clamped(double q) const;
  /// Split of [q0, q1] into pieces on which curvature is linear (constant for analytic kinds).
  std::vector<CurvaturePiece> curvature_pieces(double q0, double q1) const;

  /// Arclength positions of piece junctions / samples, including 0 and length().
  std::vector<double> breakpoints() const;

  std::span<const Piece> pieces() const { return pieces_; }
  std::span<const Vec2> samples() const { return samples_; }

  /// Same curve traversed backwards; curvature changes sign.
  Curve reversed() const;

 private:
  Curve() = default;
  void check_domain(double q) const;
  std::size_t piece_index(double q) const;
  std::size_t sample_index(double q) const;
  void finish_polyline();

  CurveKind kind_ = CurveKind::segment;
  bool closed_ = false;
  double length_ = 0.0;
  // analytic kinds
  std::vector<Piece> pieces_;
  std::vector<double> offsets_;  // arclength at the start of each piece, plus total
  // polyline
  std::vector<Vec2> samples_;
  std::vector<double> arclength_;  // at each sample; closed curves append the closing length
  std::vector<Vec2> sample_tangent_;
  std::vector<double> sample_kappa_;
};

const char* to_string(CurveKind kind);

}  // namespace cheeger::geometry
