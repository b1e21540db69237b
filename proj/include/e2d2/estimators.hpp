#pragma once

// Covariance and precision estimators: sample MLE covariance, shrinkage
// toward the diagonal, the de-sparsified correction of a graphical-lasso
// estimate, and the plug-in precision dispatch used by the classifier.

#include <cmath>
#include <string>
#include <vector>

#include "e2d2/dataset.hpp"
#include "e2d2/errors.hpp"
#include "e2d2/glasso.hpp"
#include "e2d2/matrix.hpp"

namespace e2d2 {

enum class Centering {
  Global,       // center every sample at the grand mean (divisor m)
  PooledClass,  // center each sample at its own class mean (divisor m)
};

enum class EstimatorFamily { SampleMle, PseudoInverseLda, Diag, Shrinkage, Crda, E2D2 };

struct EstimatorKind {
  EstimatorFamily family = EstimatorFamily::PseudoInverseLda;
  double beta = 0.0;    // Shrinkage weight on the full covariance
  double lambda = 0.0;  // glasso penalty for Crda / E2D2

  static EstimatorKind sample_mle() { return {EstimatorFamily::SampleMle, 0.0, 0.0}; }
  static EstimatorKind pseudo_inverse_lda() {
    return {EstimatorFamily::PseudoInverseLda, 0.0, 0.0};
  }
  static EstimatorKind diag() { return {EstimatorFamily::Diag, 0.0, 0.0}; }
  static EstimatorKind shrinkage(double beta) { return {EstimatorFamily::Shrinkage, beta, 0.0}; }
  static EstimatorKind crda(double lambda) { return {EstimatorFamily::Crda, 0.0, lambda}; }
  static EstimatorKind e2d2(double lambda) { return {EstimatorFamily::E2D2, 0.0, lambda}; }

  void validate() const {
    if (family == EstimatorFamily::Shrinkage && (beta < 0.0 || beta > 1.0)) {
      throw BetaOutOfRange("shrinkage beta must be in [0,1], got " + std::to_string(beta));
    }
    if ((family == EstimatorFamily::Crda || family == EstimatorFamily::E2D2) &&
        (lambda < 0.0 || !std::isfinite(lambda))) {
      throw InvalidSpec("glasso-backed estimator needs lambda >= 0");
    }
  }

  std::string name() const {
    switch (family) {
      case EstimatorFamily::SampleMle:
        return "MLE";
      case EstimatorFamily::PseudoInverseLda:
        return "LDA";
      case EstimatorFamily::Diag:
        return "DIAG";
      case EstimatorFamily::Shrinkage:
        return "Shrinkage";
      case EstimatorFamily::Crda:
        return "CRDA";
      case EstimatorFamily::E2D2:
        return "E2D2";
    }
    return "?";
  }

  // Parameter column for reports; empty when the family has none.
  std::string parameter() const {
    char buf[32];
    switch (family) {
      case EstimatorFamily::Shrinkage:
        std::snprintf(buf, sizeof(buf), "%g", beta);
        return buf;
      case EstimatorFamily::Crda:
      case EstimatorFamily::E2D2:
        std::snprintf(buf, sizeof(buf), "%g", lambda);
        return buf;
      default:
        return "";
    }
  }

  std::string display() const {
    const std::string par = parameter();
    return par.empty() ? name() : name() + "(" + par + ")";
  }
};

inline Vector mean_vector(const std::vector<Vector>& samples) {
  if (samples.empty()) throw EmptyInput("mean_vector: no samples");
  const std::size_t p = samples.front().size();
  Vector mu(p, 0.0);
  for (const auto& x : samples) {
    if (x.size() != p) throw DimensionMismatch("mean_vector: ragged sample lengths");
    for (std::size_t i = 0; i < p; ++i) mu[i] += x[i];
  }
  for (auto& v : mu) v /= double(samples.size());
  return mu;
}

// Maximum-likelihood sample covariance with divisor m (not m-1). Global mode
// centers at the grand mean of all samples; PooledClass centers each sample
// at its own class mean.
inline SymMatrix sample_covariance_mle(const LabeledDataset& data,
                                       Centering centering = Centering::Global) {
  data.validate();
  const int m = data.size();
  if (m < 2) throw EmptyInput("sample_covariance_mle: need m >= 2 samples");
  const int p = data.p;

  std::vector<Vector> centers;  // per-sample centering vector
  centers.reserve(std::size_t(m));
  if (centering == Centering::Global) {
    const Vector mu = mean_vector(data.samples);
    for (int i = 0; i < m; ++i) centers.push_back(mu);
  } else {
    Vector mu_plus, mu_minus;
    if (data.count_label(+1) > 0) mu_plus = mean_vector(data.samples_with_label(+1));
    if (data.count_label(-1) > 0) mu_minus = mean_vector(data.samples_with_label(-1));
    for (int i = 0; i < m; ++i) {
      centers.push_back(data.labels[std::size_t(i)] == +1 ? mu_plus : mu_minus);
    }
  }

  std::vector<double> acc(std::size_t(p) * p, 0.0);
  Vector d(std::size_t(p), 0.0);
  for (int s = 0; s < m; ++s) {
    const Vector& x = data.samples[std::size_t(s)];
    const Vector& c = centers[std::size_t(s)];
    for (int i = 0; i < p; ++i) d[std::size_t(i)] = x[std::size_t(i)] - c[std::size_t(i)];
    for (int i = 0; i < p; ++i) {
      const double di = d[std::size_t(i)];
      double* row = acc.data() + std::size_t(i) * p;
      for (int j = 0; j <= i; ++j) row[j] += di * d[std::size_t(j)];
    }
  }
  SymMatrix sigma(p);
  for (int i = 0; i < p; ++i)
    for (int j = 0; j <= i; ++j) sigma.set(i, j, acc[std::size_t(i) * p + j] / double(m));
  return sigma;
}

// beta * SigmaBar + (1 - beta) * diag(SigmaBar). The diagonal is copied
// through unchanged so it is preserved exactly for every beta.
inline SymMatrix shrinkage_covariance(const SymMatrix& sigma_bar, double beta) {
  if (!(beta >= 0.0 && beta <= 1.0)) {
    throw BetaOutOfRange("shrinkage_covariance: beta must be in [0,1], got " +
                         std::to_string(beta));
  }
  const int p = sigma_bar.dim();
  SymMatrix out(p);
  for (int i = 0; i < p; ++i) {
    out.set(i, i, sigma_bar(i, i));
    for (int j = 0; j < i; ++j) out.set(i, j, beta * sigma_bar(i, j));
  }
  return out;
}

// De-sparsified precision estimate: 2*Theta - Theta*SigmaBar*Theta,
// symmetrized. The result is not positive definite in general; the
// classifier consumes it without inverting it.
inline SymMatrix desparsify(const SymMatrix& theta_hat, const SymMatrix& sigma_bar) {
  if (theta_hat.dim() != sigma_bar.dim()) {
    throw DimensionMismatch("desparsify: dimension mismatch");
  }
  const SymMatrix tst = sandwich(theta_hat, sigma_bar);
  const int p = theta_hat.dim();
  SymMatrix t(p);
  for (int i = 0; i < p; ++i)
    for (int j = 0; j <= i; ++j) t.set(i, j, 2.0 * theta_hat(i, j) - tst(i, j));
  return t;
}

inline SymMatrix invert_diagonal(const SymMatrix& a) {
  const int p = a.dim();
  Vector d(std::size_t(p), 0.0);
  for (int i = 0; i < p; ++i) {
    const double v = a(i, i);
    if (v <= 0.0) {
      throw NotPositiveDefinite("diagonal inversion: entry " + std::to_string(i) +
                                " is not positive");
    }
    d[std::size_t(i)] = 1.0 / v;
  }
  return SymMatrix::diagonal(d);
}

inline GlassoConfig default_glasso_config(double lambda) {
  GlassoConfig cfg;
  cfg.lambda = lambda;
  return cfg;
}

// Plug-in precision from a covariance estimate. Glasso-backed kinds raise
// NotConverged when the solver exhausts its iteration budget.
inline SymMatrix make_precision(const SymMatrix& sigma_bar, const EstimatorKind& kind,
                                const GlassoConfig* glasso_overrides = nullptr) {
  kind.validate();
  switch (kind.family) {
    case EstimatorFamily::SampleMle:
      return invert_spd(sigma_bar);
    case EstimatorFamily::PseudoInverseLda:
      return pseudo_inverse(sigma_bar);
    case EstimatorFamily::Diag:
      return invert_diagonal(sigma_bar);
    case EstimatorFamily::Shrinkage: {
      const SymMatrix s = shrinkage_covariance(sigma_bar, kind.beta);
      if (kind.beta == 0.0) return invert_diagonal(s);
      return invert_spd(s);
    }
    case EstimatorFamily::Crda:
    case EstimatorFamily::E2D2: {
      GlassoConfig cfg = glasso_overrides ? *glasso_overrides : GlassoConfig{};
      cfg.lambda = kind.lambda;
      const GlassoResult g = graphical_lasso(sigma_bar, cfg);
      if (!g.converged) {
        throw NotConverged("glasso did not converge in " + std::to_string(g.iters) + " sweeps");
      }
      if (kind.family == EstimatorFamily::Crda) return g.theta;
      return desparsify(g.theta, sigma_bar);
    }
  }
  throw InvalidSpec("make_precision: unknown estimator kind");
}

inline SymMatrix make_precision(const LabeledDataset& data, const EstimatorKind& kind,
                                Centering centering = Centering::Global,
                                const GlassoConfig* glasso_overrides = nullptr) {
  return make_precision(sample_covariance_mle(data, centering), kind, glasso_overrides);
}

}  // namespace e2d2
