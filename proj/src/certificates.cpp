#include "cheeger/certificates.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cheeger/parallel.hpp"

namespace cheeger::certificates {

namespace {

double field_vt(double kappa, double a, double t) {
  if (std::abs(kappa) * a < 1e-8) return t / a;
  // numerator (1 - ka)(1 + ka) - (1 - kt)^2 expanded and divided by k
  return (2.0 * t - kappa * (a * a + t * t)) / (2.0 * a * (1.0 - kappa * t));
}

}  // namespace

GridField::GridField(const Strip& strip, std::size_t n_q, std::size_t n_t)
    : strip_(strip), n_q_(n_q), n_t_(n_t) {
  if (n_q < 2 || n_t < 2) throw ValidationError("field grid needs at least 2 nodes per direction");
  kappa_.resize(n_q);
  for (std::size_t i = 0; i < n_q; ++i) kappa_[i] = strip_.curve.curvature_clamped(q(i));
}

GridField GridField::builtin(const Strip& strip, std::size_t n_q, std::size_t n_t) {
  GridField f(strip, n_q, n_t);
  f.vq_.assign(n_q * n_t, 0.0);
  f.vt_.resize(n_q * n_t);
  const double a = strip.halfwidth;
  parallel_for(n_q, [&](std::size_t i) {
    for (std::size_t j = 0; j < n_t; ++j) f.vt_[i * n_t + j] = field_vt(f.kappa_[i], a, f.t(j));
  });
  return f;
}

GridField GridField::zero(const Strip& strip, std::size_t n_q, std::size_t n_t) {
  GridField f(strip, n_q, n_t);
  f.vq_.assign(n_q * n_t, 0.0);
  f.vt_.assign(n_q * n_t, 0.0);
  return f;
}

GridField GridField::from_values(const Strip& strip, std::size_t n_q, std::size_t n_t,
                                 std::vector<double> v_q, std::vector<double> v_t) {
  GridField f(strip, n_q, n_t);
  if (v_q.size() != n_q * n_t || v_t.size() != n_q * n_t) {
    throw ValidationError("field values do not match the grid size");
  }
  for (std::size_t k = 0; k < v_q.size(); ++k) {
    if (!std::isfinite(v_q[k]) || !std::isfinite(v_t[k])) throw ValidationError("field value is not finite");
  }
  f.vq_ = std::move(v_q);
  f.vt_ = std::move(v_t);
  return f;
}

GridField GridField::scaled(double factor) const {
  GridField f = *this;
  for (auto& v : f.vq_) v *= factor;
  for (auto& v : f.vt_) v *= factor;
  return f;
}

double GridField::q(std::size_t i) const {
  return strip_.curve.length() * static_cast<double>(i) / static_cast<double>(n_q_ - 1);
}

double GridField::t(std::size_t j) const {
  const double a = strip_.halfwidth;
  return -a + 2.0 * a * static_cast<double>(j) / static_cast<double>(n_t_ - 1);
}

double GridField::dq() const { return strip_.curve.length() / static_cast<double>(n_q_ - 1); }
double GridField::dt() const { return 2.0 * strip_.halfwidth / static_cast<double>(n_t_ - 1); }

std::pair<double, double> builtin_strip_field(const Strip& strip, double q, double t) {
  const double a = strip.halfwidth;
  if (std::abs(t) > a * (1.0 + 1e-12)) throw DomainError("offset |t| exceeds the half-width");
  return {0.0, field_vt(strip.curve.curvature_clamped(q), a, t)};
}

double divergence(const GridField& field, std::size_t i, std::size_t j) {
  if (i == 0 || j == 0 || i + 1 >= field.n_q() || j + 1 >= field.n_t()) {
    throw DomainError("divergence is only defined at interior nodes");
  }
  const double k = field.kappa(i);
  const double u = 1.0 - k * field.t(j);
  const double dvq = (field.v_q(i + 1, j) - field.v_q(i - 1, j)) / (2.0 * field.dq());
  const double dvt = (field.v_t(i, j + 1) - field.v_t(i, j - 1)) / (2.0 * field.dt());
  return dvq / u + dvt - k * field.v_t(i, j) / u;
}

CertReport certify_lower_bound(const GridField& field, double h_claim, std::optional<double> tol_div) {
  const auto& strip = field.strip();
  if (!(strip.curve.length() > 0.0) || !(strip.halfwidth > 0.0)) {
    throw ValidationError("field grid does not cover the strip");
  }
  CertReport rep;
  rep.h_claim = h_claim;
  double max_k = 0.0;
  for (std::size_t i = 0; i < field.n_q(); ++i) max_k = std::max(max_k, std::abs(field.kappa(i)));
  rep.tol_div = tol_div ? *tol_div : 10.0 / static_cast<double>(field.n_t()) * max_k * strip.halfwidth + 1e-6;

  const std::size_t nq = field.n_q();
  const std::size_t nt = field.n_t();
  std::vector<double> row_sup(nq, 0.0);
  std::vector<double> row_min(nq, std::numeric_limits<double>::infinity());
  std::vector<std::size_t> row_arg(nq, 0);
  parallel_for(nq, [&](std::size_t i) {
    for (std::size_t j = 0; j < nt; ++j) {
      row_sup[i] = std::max(row_sup[i], std::hypot(field.v_q(i, j), field.v_t(i, j)));
      if (i == 0 || j == 0 || i + 1 == nq || j + 1 == nt) continue;
      const double d = divergence(field, i, j);
      if (d < row_min[i]) {
        row_min[i] = d;
        row_arg[i] = j;
      }
    }
  });
  rep.min_divergence = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < nq; ++i) {
    rep.sup_v = std::max(rep.sup_v, row_sup[i]);
    if (row_min[i] < rep.min_divergence) {
      rep.min_divergence = row_min[i];
      rep.argmin_q = field.q(i);
      rep.argmin_t = field.t(row_arg[i]);
    }
  }
  if (!std::isfinite(rep.min_divergence)) {
    rep.reason = "grid has no interior nodes";
    return rep;
  }
  if (rep.sup_v > 1.0 + rep.tol_v) {
    rep.reason = "sup |V| exceeds 1";
  } else if (rep.min_divergence < h_claim - rep.tol_div) {
    rep.reason = "divergence falls below the claimed bound";
  } else {
    rep.passed = true;
    rep.certified_bound = h_claim;
  }
  return rep;
}

EigenvalueBounds eigenvalue_bounds(double h, double a, double p) {
  if (!(p > 1.0)) throw DomainError("exponent p must exceed 1");
  if (!(h > 0.0)) throw DomainError("h must be positive");
  EigenvalueBounds b;
  b.cheeger_bound = std::pow(h / p, p);
  b.stronger = "cheeger";
  if (p == 2.0) {
    if (!(a > 0.0)) throw DomainError("half-width must be positive");
    b.strip_bound = bessel_j01 * bessel_j01 / (4.0 * a * a);
    if (*b.strip_bound > b.cheeger_bound) b.stronger = "strip";
  }
  return b;
}

}  // namespace cheeger::certificates
