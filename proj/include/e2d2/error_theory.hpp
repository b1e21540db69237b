#pragma once

// Closed-form expected misclassification rates of a plug-in LDA rule under
// known Gaussian class conditionals, and the Frobenius-norm / rate-based
// upper bounds on them.

#include <cmath>
#include <string>
#include <vector>

#include "e2d2/errors.hpp"
#include "e2d2/matrix.hpp"

namespace e2d2 {

// Ground-truth pair of Gaussians sharing one covariance.
struct GaussianPair {
  Vector mu_plus;
  Vector mu_minus;
  SymMatrix sigma;
  double prior_plus = 0.5;

  GaussianPair(Vector mup, Vector mum, SymMatrix s, double pp = 0.5)
      : mu_plus(std::move(mup)), mu_minus(std::move(mum)), sigma(std::move(s)), prior_plus(pp) {
    if (static_cast<int>(mu_plus.size()) != sigma.dim() || mu_plus.size() != mu_minus.size()) {
      throw DimensionMismatch("GaussianPair: dimensions disagree");
    }
    if (!(prior_plus > 0.0 && prior_plus < 1.0)) {
      throw InvalidSpec("GaussianPair: prior_plus must be in (0,1)");
    }
  }

  int dim() const { return sigma.dim(); }
  Vector mean_gap() const { return vec_sub(mu_plus, mu_minus); }
};

inline double std_normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

// Expected error of the equal-prior-threshold plug-in rule
// sign((x - (mu_hat_+ + mu_hat_-)/2)' P delta_hat), mixed with the true class
// priors. Exact for Gaussian classes.
inline double expected_error_general(const GaussianPair& truth, const Vector& mu_hat_plus,
                                     const Vector& mu_hat_minus, const SymMatrix& precision_hat) {
  const int p = truth.dim();
  if (static_cast<int>(mu_hat_plus.size()) != p || static_cast<int>(mu_hat_minus.size()) != p ||
      precision_hat.dim() != p) {
    throw DimensionMismatch("expected_error_general: dimensions disagree");
  }
  const Vector delta_hat = vec_sub(mu_hat_plus, mu_hat_minus);
  Vector mid(std::size_t(p), 0.0);
  for (int i = 0; i < p; ++i) {
    mid[std::size_t(i)] = 0.5 * (mu_hat_plus[std::size_t(i)] + mu_hat_minus[std::size_t(i)]);
  }
  const Vector u = matvec(precision_hat, delta_hat);
  const double denom2 = quad_form(truth.sigma, u);
  if (!(denom2 > 0.0) || !std::isfinite(denom2)) {
    throw DegenerateDirection("expected_error_general: delta'P Sigma P delta = " +
                              std::to_string(denom2) + " is not positive");
  }
  const double denom = std::sqrt(denom2);
  const double a_plus = dot(vec_sub(truth.mu_plus, mid), u);
  const double a_minus = dot(vec_sub(truth.mu_minus, mid), u);
  return truth.prior_plus * std_normal_cdf(-a_plus / denom) +
         (1.0 - truth.prior_plus) * std_normal_cdf(a_minus / denom);
}

// Reduced form when the plug-in means are trusted: Phi(-(d'Pd)/(2 sqrt(d'P Sigma P d))).
inline double expected_error_reduced(const Vector& mu_hat_plus, const Vector& mu_hat_minus,
                                     const SymMatrix& sigma, const SymMatrix& precision_hat) {
  if (mu_hat_plus.size() != mu_hat_minus.size() ||
      static_cast<int>(mu_hat_plus.size()) != sigma.dim() || sigma.dim() != precision_hat.dim()) {
    throw DimensionMismatch("expected_error_reduced: dimensions disagree");
  }
  const Vector delta = vec_sub(mu_hat_plus, mu_hat_minus);
  const Vector u = matvec(precision_hat, delta);
  const double denom2 = quad_form(sigma, u);
  if (!(denom2 > 0.0) || !std::isfinite(denom2)) {
    throw DegenerateDirection("expected_error_reduced: delta'P Sigma P delta = " +
                              std::to_string(denom2) + " is not positive");
  }
  const double num = dot(delta, u);
  return std_normal_cdf(-num / (2.0 * std::sqrt(denom2)));
}

// Upper bound driven by the Frobenius norms of the plug-in precision and of
// its estimation error: Phi(-(|d|_2 / 2) * sqrt(|P|_F + |Sigma^{-1} - P|_F)).
inline double error_bound_frobenius(const Vector& mu_hat_plus, const Vector& mu_hat_minus,
                                    const SymMatrix& precision_hat, const SymMatrix& sigma) {
  if (mu_hat_plus.size() != mu_hat_minus.size() ||
      static_cast<int>(mu_hat_plus.size()) != sigma.dim() || sigma.dim() != precision_hat.dim()) {
    throw DimensionMismatch("error_bound_frobenius: dimensions disagree");
  }
  const double gap = norm2(vec_sub(mu_hat_plus, mu_hat_minus));
  const SymMatrix sigma_inv = invert_spd(sigma);
  const double term = norms(precision_hat).frobenius + norms(sym_sub(sigma_inv, precision_hat)).frobenius;
  return std_normal_cdf(-0.5 * gap * std::sqrt(term));
}

// Stochastic variant that replaces the unknown estimation-error norm with the
// convergence-rate term c_rate * p * sqrt(log p / m) of the de-sparsified
// estimator. The rate constant is not pinned down by theory, so it is a
// caller-supplied knob.
inline double error_bound_rate(const Vector& mu_hat_plus, const Vector& mu_hat_minus,
                               const SymMatrix& t_hat, int m, double c_rate = 1.0) {
  if (mu_hat_plus.size() != mu_hat_minus.size() ||
      static_cast<int>(mu_hat_plus.size()) != t_hat.dim()) {
    throw DimensionMismatch("error_bound_rate: dimensions disagree");
  }
  if (m < 2) throw InvalidSpec("error_bound_rate: m must be >= 2");
  if (!(c_rate >= 0.0)) throw InvalidSpec("error_bound_rate: c_rate must be >= 0");
  const int p = t_hat.dim();
  const double gap = norm2(vec_sub(mu_hat_plus, mu_hat_minus));
  const double rate = c_rate * double(p) * std::sqrt(std::log(double(p)) / double(m));
  return std_normal_cdf(-0.5 * gap * std::sqrt(norms(t_hat).frobenius + rate));
}

// Maximal vector support: the largest row-wise count of entries with
// |theta_ij| > zero_tol, diagonal included.
inline int max_vector_support(const SymMatrix& theta, double zero_tol = 1e-10) {
  if (zero_tol < 0.0) throw InvalidSpec("max_vector_support: zero_tol must be >= 0");
  const int p = theta.dim();
  int best = 0;
  for (int i = 0; i < p; ++i) {
    int count = 0;
    for (int j = 0; j < p; ++j) {
      if (std::abs(theta(i, j)) > zero_tol) ++count;
    }
    best = std::max(best, count);
  }
  return best;
}

}  // namespace e2d2
