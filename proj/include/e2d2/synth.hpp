#pragma once

// Seeded synthetic data: multivariate normal sampling and sparse
// positive-definite ground-truth precision matrices.
//
// Randomness contract: all draws come from mt19937_64 plus an explicit
// Box-Muller transform, so identical seeds give bit-identical output on any
// platform. There is no global generator.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "e2d2/errors.hpp"
#include "e2d2/matrix.hpp"

namespace e2d2 {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  // Uniform on (0,1]; never returns 0 so log() below is safe.
  double uniform_oc() { return (double(gen_() >> 11) + 1.0) * 0x1.0p-53; }

  // Uniform on [0,1).
  double uniform_co() { return double(gen_() >> 11) * 0x1.0p-53; }

  // Standard normal via Box-Muller; the second variate of each pair is cached.
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double r = std::sqrt(-2.0 * std::log(uniform_oc()));
    const double a = 2.0 * kPi * uniform_co();
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

  // Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n) {
    // Rejection sampling to avoid modulo bias.
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                (std::numeric_limits<std::uint64_t>::max() % n);
    std::uint64_t v;
    do {
      v = gen_();
    } while (v >= limit);
    return v % n;
  }

 private:
  static constexpr double kPi = 3.14159265358979323846;
  std::mt19937_64 gen_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

// Draws n samples of N(mu, Sigma) as mu + L z with L the Cholesky factor.
inline std::vector<Vector> sample_mvn(const Vector& mu, const CholeskyFactor& chol_sigma, int n,
                                      Rng& rng) {
  const int p = chol_sigma.dim();
  if (static_cast<int>(mu.size()) != p) throw DimensionMismatch("sample_mvn: mu length != dim");
  if (n < 1) throw InvalidSpec("sample_mvn: n must be >= 1");
  std::vector<Vector> out;
  out.reserve(std::size_t(n));
  Vector z(std::size_t(p), 0.0);
  for (int s = 0; s < n; ++s) {
    for (int i = 0; i < p; ++i) z[std::size_t(i)] = rng.normal();
    Vector x(mu);
    for (int i = 0; i < p; ++i) {
      double acc = 0.0;
      for (int j = 0; j <= i; ++j) acc += chol_sigma(i, j) * z[std::size_t(j)];
      x[std::size_t(i)] += acc;
    }
    out.push_back(std::move(x));
  }
  return out;
}

inline std::vector<Vector> sample_mvn(const Vector& mu, const SymMatrix& sigma, int n,
                                      std::uint64_t seed) {
  Rng rng(seed);
  return sample_mvn(mu, cholesky(sigma), n, rng);
}

struct SparsePrecisionSpec {
  enum class Structure { Banded, RandomSparse };

  int p = 1;
  Structure structure = Structure::Banded;
  int bandwidth = 0;        // Banded: nonzeros at |i-j| <= bandwidth
  int row_support = 0;      // RandomSparse: off-diagonal partners drawn per row
  double offdiag_strength = 0.0;
  std::uint64_t seed = 0;   // used by RandomSparse only

  void validate() const {
    if (p < 1) throw InvalidSpec("precision spec: p must be >= 1");
    if (!std::isfinite(offdiag_strength)) throw InvalidSpec("precision spec: bad strength");
    if (structure == Structure::Banded) {
      if (bandwidth < 0) throw InvalidSpec("precision spec: bandwidth must be >= 0");
    } else {
      if (row_support < 0 || row_support > p - 1) {
        throw InvalidSpec("precision spec: row_support must be in [0, p-1]");
      }
    }
  }
};

// Minimum eigenvalue enforced on generated precision matrices by diagonal
// loading; keeps the support pattern intact.
inline constexpr double kPrecisionTruthMinEigen = 0.05;

// Ground-truth sparse precision: unit diagonal, offdiag_strength on the
// declared pattern, then diagonal-loaded until the smallest eigenvalue is at
// least kPrecisionTruthMinEigen. RandomSparse caps every node's degree at
// 2*row_support so the row support never exceeds 2*row_support + 1 even
// after symmetric fill.
inline SymMatrix make_precision_truth(const SparsePrecisionSpec& spec) {
  spec.validate();
  const int p = spec.p;
  SymMatrix theta = SymMatrix::identity(p);

  if (spec.structure == SparsePrecisionSpec::Structure::Banded) {
    for (int i = 0; i < p; ++i) {
      for (int j = std::max(0, i - spec.bandwidth); j < i; ++j) {
        theta.set(i, j, spec.offdiag_strength);
      }
    }
  } else {
    Rng rng(spec.seed);
    const int cap = 2 * spec.row_support;
    std::vector<int> degree(std::size_t(p), 0);
    for (int i = 0; i < p; ++i) {
      int attempts = 0;
      while (degree[std::size_t(i)] < spec.row_support && attempts < 64 * p) {
        ++attempts;
        const int j = static_cast<int>(rng.below(std::uint64_t(p)));
        if (j == i || theta(i, j) != 0.0) continue;
        if (degree[std::size_t(j)] >= cap || degree[std::size_t(i)] >= cap) continue;
        theta.set(i, j, spec.offdiag_strength);
        ++degree[std::size_t(i)];
        ++degree[std::size_t(j)];
      }
    }
  }

  if (p > 1 && spec.offdiag_strength != 0.0) {
    const SymEigen e = eigen_sym(theta);
    double lam_min = e.values.front();
    for (double v : e.values) lam_min = std::min(lam_min, v);
    if (lam_min < kPrecisionTruthMinEigen) {
      const double load = kPrecisionTruthMinEigen - lam_min;
      for (int i = 0; i < p; ++i) theta.set(i, i, theta(i, i) + load);
    }
  }
  return theta;
}

// d * ln(p) / sqrt(m): how far a support size d sits from the
// d = o(sqrt(m)/log p) regime. Callers decide what counts as "small".
inline double sparsity_regime_ratio(int d, int m, int p) {
  if (m < 2) throw InvalidSpec("sparsity_regime_ratio: m must be >= 2");
  if (p < 2) throw InvalidSpec("sparsity_regime_ratio: p must be >= 2");
  if (d < 0) throw InvalidSpec("sparsity_regime_ratio: d must be >= 0");
  return double(d) * std::log(double(p)) / std::sqrt(double(m));
}

}  // namespace e2d2
