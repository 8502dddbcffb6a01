#include "cheeger/curve.hpp"

#include <algorithm>
#include <string>

namespace cheeger::geometry {

namespace {

constexpr double kJoinTolerance = 1e-9;
constexpr double kTangentTolerance = 1e-6;
constexpr double kMaxTurnPerSample = 0.1;

}  // namespace

const char* to_string(CurveKind kind) {
  switch (kind) {
    case CurveKind::segment: return "segment";
    case CurveKind::circular_arc: return "circular-arc";
    case CurveKind::full_circle: return "full-circle";
    case CurveKind::sampled_polyline: return "sampled-polyline";
    case CurveKind::composite: return "composite";
  }
  return "unknown";
}

Curve Curve::segment(Vec2 start, Vec2 end) {
  if (!(distance(start, end) > 0.0)) throw ValidationError("segment must have positive length");
  return composite({Segment{start, end}});
}

Curve Curve::arc(Vec2 center, double radius, double start_angle, double span) {
  if (!(radius > 0.0)) throw ValidationError("arc radius must be positive");
  if (span == 0.0 || std::abs(span) > two_pi) throw ValidationError("arc span must be in (0, 2pi]");
  return composite({Arc{center, radius, start_angle, span}});
}

Curve Curve::circle(Vec2 center, double radius, bool counterclockwise, double start_angle) {
  return arc(center, radius, start_angle, counterclockwise ? two_pi : -two_pi);
}

Curve Curve::composite(std::vector<Piece> pieces) {
  if (pieces.empty()) throw ValidationError("composite curve needs at least one piece");
  Curve c;
  c.pieces_ = std::move(pieces);
  c.offsets_.reserve(c.pieces_.size() + 1);
  c.offsets_.push_back(0.0);
  for (const auto& p : c.pieces_) {
    const double len = piece_length(p);
    if (!(len > 0.0)) throw ValidationError("curve pieces must have positive length");
    if (const auto* a = std::get_if<Arc>(&p)) {
      if (!(a->radius > 0.0) || std::abs(a->span) > two_pi) {
        throw ValidationError("invalid arc piece");
      }
    }
    c.offsets_.push_back(c.offsets_.back() + len);
  }
  c.length_ = c.offsets_.back();
  const double tol = kJoinTolerance * std::max(1.0, c.length_);
  for (std::size_t i = 0; i + 1 < c.pieces_.size(); ++i) {
    if (distance(piece_end(c.pieces_[i]), piece_start(c.pieces_[i + 1])) > tol) {
      throw ValidationError("curve pieces do not join at piece " + std::to_string(i));
    }
    const Vec2 t0 = piece_tangent_end(c.pieces_[i]);
    const Vec2 t1 = piece_tangent_start(c.pieces_[i + 1]);
    if (std::abs(cross(t0, t1)) > kTangentTolerance || dot(t0, t1) < 0.0) {
      throw ValidationError("curve is not tangent-continuous at piece " + std::to_string(i));
    }
  }
  const bool single_circle = c.pieces_.size() == 1 && std::holds_alternative<Arc>(c.pieces_[0]) &&
                             std::abs(std::get<Arc>(c.pieces_[0]).span) == two_pi;
  if (single_circle) {
    c.closed_ = true;
  } else if (distance(piece_end(c.pieces_.back()), piece_start(c.pieces_.front())) <= tol) {
    const Vec2 t0 = piece_tangent_end(c.pieces_.back());
    const Vec2 t1 = piece_tangent_start(c.pieces_.front());
    if (std::abs(cross(t0, t1)) > kTangentTolerance || dot(t0, t1) < 0.0) {
      throw ValidationError("closed curve is not tangent-continuous at its seam");
    }
    c.closed_ = true;
  }
  if (c.pieces_.size() == 1) {
    if (std::holds_alternative<Segment>(c.pieces_[0])) {
      c.kind_ = CurveKind::segment;
    } else {
      c.kind_ = single_circle ? CurveKind::full_circle : CurveKind::circular_arc;
    }
  } else {
    c.kind_ = CurveKind::composite;
  }
  return c;
}

Curve Curve::polyline(std::vector<Vec2> samples, bool closed) {
  if (samples.size() < (closed ? 3u : 2u)) throw ValidationError("polyline needs more samples");
  Curve c;
  c.kind_ = CurveKind::sampled_polyline;
  c.closed_ = closed;
  c.samples_ = std::move(samples);
  c.finish_polyline();
  return c;
}

void Curve::finish_polyline() {
  const std::size_t n = samples_.size();
  const std::size_t n_seg = closed_ ? n : n - 1;
  arclength_.assign(1, 0.0);
  for (std::size_t i = 0; i < n_seg; ++i) {
    const double h = distance(samples_[i], samples_[(i + 1) % n]);
    if (!(h > 0.0)) throw ValidationError("polyline samples must be distinct");
    arclength_.push_back(arclength_.back() + h);
  }
  length_ = arclength_.back();

  auto chord = [&](std::size_t i) {  // unit direction of segment i
    return normalized(samples_[(i + 1) % n] - samples_[i]);
  };
  for (std::size_t i = 0; i + 1 < n_seg; ++i) {
    const double turn = std::abs(std::atan2(cross(chord(i), chord(i + 1)), dot(chord(i), chord(i + 1))));
    if (turn > kMaxTurnPerSample) {
      throw ValidationError("polyline turns by more than 0.1 rad at sample " + std::to_string(i + 1));
    }
  }

  sample_tangent_.assign(n, Vec2{});
  sample_kappa_.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const bool interior = closed_ || (i > 0 && i + 1 < n);
    if (!interior) {
      sample_tangent_[i] = i == 0 ? chord(0) : chord(n - 2);
      continue;
    }
    const std::size_t prev = (i + n - 1) % n;
    const std::size_t next = (i + 1) % n;
    const double h0 = distance(samples_[prev], samples_[i]);
    const double h1 = distance(samples_[i], samples_[next]);
    const Vec2 d0 = (samples_[i] - samples_[prev]) / h0;
    const Vec2 d1 = (samples_[next] - samples_[i]) / h1;
    const Vec2 first = (h0 * d1 + h1 * d0) / (h0 + h1);
    const Vec2 second = 2.0 * (d1 - d0) / (h0 + h1);
    const Vec2 t = normalized(first);
    sample_tangent_[i] = t;
    sample_kappa_[i] = cross(t, second);
  }
  if (!closed_ && n >= 3) {
    // ends carry the nearest interior value; curvature() still rejects them
    sample_kappa_[0] = sample_kappa_[1];
    sample_kappa_[n - 1] = sample_kappa_[n - 2];
  }
}

Curve Curve::sample_unit_speed(const std::function<Vec2(double)>& f, double t0, double t1,
                               std::size_t n) {
  if (n < 2 || !(t1 > t0)) throw ValidationError("invalid sampling request");
  const std::size_t dense = 64 * n;
  std::vector<double> ts(dense + 1), s(dense + 1, 0.0);
  Vec2 prev = f(t0);
  ts[0] = t0;
  for (std::size_t i = 1; i <= dense; ++i) {
    ts[i] = t0 + (t1 - t0) * static_cast<double>(i) / static_cast<double>(dense);
    const Vec2 cur = f(ts[i]);
    s[i] = s[i - 1] + distance(prev, cur);
    prev = cur;
  }
  std::vector<Vec2> samples;
  samples.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double target = s.back() * static_cast<double>(k) / static_cast<double>(n - 1);
    const auto it = std::lower_bound(s.begin(), s.end(), target);
    std::size_t j = static_cast<std::size_t>(std::distance(s.begin(), it));
    j = std::clamp<std::size_t>(j, 1, dense);
    const double w = (target - s[j - 1]) / (s[j] - s[j - 1]);
    samples.push_back(f(ts[j - 1] + w * (ts[j] - ts[j - 1])));
  }
  return polyline(std::move(samples), false);
}

void Curve::check_domain(double q) const {
  const double tol = 1e-12 * std::max(1.0, length_);
  if (!(q >= -tol && q <= length_ + tol)) {
    throw DomainError("arclength " + std::to_string(q) + " outside [0, " +
                      std::to_string(length_) + "]");
  }
}

std::size_t Curve::piece_index(double q) const {
  const auto it = std::upper_bound(offsets_.begin(), offsets_.end(), q);
  const auto idx = static_cast<std::size_t>(std::distance(offsets_.begin(), it));
  return std::clamp<std::size_t>(idx, 1, pieces_.size()) - 1;
}

std::size_t Curve::sample_index(double q) const {
  const auto it = std::upper_bound(arclength_.begin(), arclength_.end(), q);
  const auto idx = static_cast<std::size_t>(std::distance(arclength_.begin(), it));
  return std::clamp<std::size_t>(idx, 1, arclength_.size() - 1) - 1;
}

Vec2 Curve::point(double q) const {
  check_domain(q);
  if (kind_ != CurveKind::sampled_polyline) {
    const std::size_t i = piece_index(q);
    return piece_point_at(pieces_[i], std::clamp(q - offsets_[i], 0.0, piece_length(pieces_[i])));
  }
  const std::size_t k = sample_index(q);
  const double w = std::clamp((q - arclength_[k]) / (arclength_[k + 1] - arclength_[k]), 0.0, 1.0);
  const Vec2 a = samples_[k];
  const Vec2 b = samples_[(k + 1) % samples_.size()];
  return a + w * (b - a);
}

Vec2 Curve::tangent(double q) const {
  check_domain(q);
  if (kind_ != CurveKind::sampled_polyline) {
    const std::size_t i = piece_index(q);
    return piece_tangent_at(pieces_[i], std::clamp(q - offsets_[i], 0.0, piece_length(pieces_[i])));
  }
  const std::size_t k = sample_index(q);
  const double w = std::clamp((q - arclength_[k]) / (arclength_[k + 1] - arclength_[k]), 0.0, 1.0);
  const Vec2 a = sample_tangent_[k];
  const Vec2 b = sample_tangent_[(k + 1) % samples_.size()];
  return normalized((1.0 - w) * a + w * b);
}

std::pair<double, double> Curve::curvature_domain() const {
  if (kind_ != CurveKind::sampled_polyline || closed_) return {0.0, length_};
  if (samples_.size() < 3) return {0.0, 0.0};
  return {arclength_[1], arclength_[samples_.size() - 2]};
}

double Curve::curvature(double q) const {
  check_domain(q);
  if (kind_ != CurveKind::sampled_polyline) return piece_curvature(pieces_[piece_index(q)]);
  const auto [lo, hi] = curvature_domain();
  const double tol = 1e-12 * std::max(1.0, length_);
  if (q < lo - tol || q > hi + tol) {
    throw DomainError("polyline curvature needs q at least one sample away from the ends");
  }
  return curvature_clamped(q);
}

double Curve::curvature_clamped(double q) const {
  if (kind_ != CurveKind::sampled_polyline) {
    return piece_curvature(pieces_[piece_index(std::clamp(q, 0.0, length_))]);
  }
  const auto [lo, hi] = curvature_domain();
  q = std::clamp(q, lo, hi);
  const std::size_t k = sample_index(q);
  const double w = std::clamp((q - arclength_[k]) / (arclength_[k + 1] - arclength_[k]), 0.0, 1.0);
  return (1.0 - w) * sample_kappa_[k] + w * sample_kappa_[(k + 1) % samples_.size()];
}

std::vector<CurvaturePiece> Curve::curvature_pieces(double q0, double q1) const {
  std::vector<CurvaturePiece> out;
  if (!(q1 > q0)) return out;
  const std::vector<double> bps = breakpoints();
  std::vector<double> cuts{q0};
  for (double b : bps) {
    if (b > q0 && b < q1) cuts.push_back(b);
  }
  cuts.push_back(q1);
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double a = cuts[i];
    const double b = cuts[i + 1];
    if (kind_ != CurveKind::sampled_polyline) {
      const double k = piece_curvature(pieces_[piece_index(0.5 * (a + b))]);
      out.push_back({a, b, k, k});
    } else {
      out.push_back({a, b, curvature_clamped(a), curvature_clamped(b)});
    }
  }
  return out;
}

std::vector<double> Curve::breakpoints() const {
  if (kind_ != CurveKind::sampled_polyline) return offsets_;
  return arclength_;
}

Curve Curve::reversed() const {
  if (kind_ == CurveKind::sampled_polyline) {
    std::vector<Vec2> rev(samples_.rbegin(), samples_.rend());
    if (closed_) std::rotate(rev.rbegin(), rev.rbegin() + 1, rev.rend());
    return polyline(std::move(rev), closed_);
  }
  std::vector<Piece> rev;
  for (auto it = pieces_.rbegin(); it != pieces_.rend(); ++it) rev.push_back(piece_reversed(*it));
  return composite(std::move(rev));
}

}  // namespace cheeger::geometry
