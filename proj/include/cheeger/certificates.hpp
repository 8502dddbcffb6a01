#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cheeger/strip.hpp"

namespace cheeger::certificates {

using geometry::Strip;

inline constexpr double bessel_j01 = 2.404825557695773;

/// Vector field sampled on the (q, t) grid [0, |Gamma|] x [-a, a] of a strip. Components are
/// taken in the orthonormal frame (tangent, normal), so |V|^2 = V_q^2 + V_t^2.
class GridField {
 public:
  static GridField builtin(const Strip& strip, std::size_t n_q, std::size_t n_t);
  static GridField zero(const Strip& strip, std::size_t n_q, std::size_t n_t);
  /// Node values in q-major order: index i * n_t + j for node (q_i, t_j).
  static GridField from_values(const Strip& strip, std::size_t n_q, std::size_t n_t,
                               std::vector<double> v_q, std::vector<double> v_t);

  GridField scaled(double factor) const;

  const Strip& strip() const { return strip_; }
  std::size_t n_q() const { return n_q_; }
  std::size_t n_t() const { return n_t_; }
  double q(std::size_t i) const;
  double t(std::size_t j) const;
  double dq() const;
  double dt() const;
  double v_q(std::size_t i, std::size_t j) const { return vq_[i * n_t_ + j]; }
  double v_t(std::size_t i, std::size_t j) const { return vt_[i * n_t_ + j]; }
  double kappa(std::size_t i) const { return kappa_[i]; }

 private:
  GridField(const Strip& strip, std::size_t n_q, std::size_t n_t);
  Strip strip_;
  std::size_t n_q_ = 0;
  std::size_t n_t_ = 0;
  std::vector<double> kappa_;
  std::vector<double> vq_;
  std::vector<double> vt_;
};

/// The field (0, V_t) with V_t = [(1 - kappa a)(1 + kappa a) - (1 - kappa t)^2] / (2 a kappa (1 - kappa t)),
/// and V_t = t / a when |kappa| a < 1e-8. Its divergence is identically 1/a.
std::pair<double, double> builtin_strip_field(const Strip& strip, double q, double t);

/// Divergence in tube coordinates by central differences at interior node (i, j):
/// (1/(1 - kappa t)) d_q V_q + d_t V_t - kappa V_t / (1 - kappa t).
double divergence(const GridField& field, std::size_t i, std::size_t j);

struct CertReport {
  double h_claim = 0.0;
  double sup_v = 0.0;
  double min_divergence = 0.0;
  double argmin_q = 0.0;
  double argmin_t = 0.0;
  double tol_v = 1e-9;
  double tol_div = 0.0;
  bool passed = false;
  /// Present on success: h(Omega) >= certified_bound up to the stated tolerances.
  std::optional<double> certified_bound;
  std::string reason;
};

/// Checks sup |V| <= 1 + tol_v and min interior divergence >= h_claim - tol_div. The default
/// tol_div is 10 / n_t * max |kappa| a + 1e-6.
CertReport certify_lower_bound(const GridField& field, double h_claim,
                               std::optional<double> tol_div = std::nullopt);

struct EigenvalueBounds {
  double cheeger_bound = 0.0;        ///< (h / p)^p
  std::optional<double> strip_bound; ///< j01^2 / (4 a^2), p = 2 only
  std::string stronger;              ///< "cheeger" or "strip"
};

EigenvalueBounds eigenvalue_bounds(double h, double a, double p);

}  // namespace cheeger::certificates
