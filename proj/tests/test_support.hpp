#pragma once

// Shared helpers for the unit suites: seeded random matrices/vectors and
// matrix comparison utilities.

#include <cmath>
#include <vector>

#include "e2d2/matrix.hpp"
#include "e2d2/synth.hpp"

namespace test_support {

using e2d2::Rng;
using e2d2::SymMatrix;
using e2d2::Vector;

inline Vector random_vector(int p, Rng& rng, double scale = 1.0) {
  Vector v(static_cast<std::size_t>(p), 0.0);
  for (auto& x : v) x = scale * rng.normal();
  return v;
}

// Random symmetric matrix with N(0, scale^2) entries.
inline SymMatrix random_symmetric(int p, Rng& rng, double scale = 1.0) {
  SymMatrix a(p);
  for (int i = 0; i < p; ++i)
    for (int j = 0; j <= i; ++j) a.set(i, j, scale * rng.normal());
  return a;
}

// Random SPD matrix G*G'/p + ridge*I; the ridge keeps the condition number
// moderate.
inline SymMatrix random_spd(int p, Rng& rng, double ridge = 0.1) {
  std::vector<double> g(std::size_t(p) * p);
  for (auto& x : g) x = rng.normal();
  SymMatrix a(p);
  for (int i = 0; i < p; ++i) {
    for (int j = 0; j <= i; ++j) {
      double s = 0.0;
      for (int k = 0; k < p; ++k) s += g[std::size_t(i) * p + k] * g[std::size_t(j) * p + k];
      a.set(i, j, s / p + (i == j ? ridge : 0.0));
    }
  }
  return a;
}

inline double max_abs_diff(const SymMatrix& a, const SymMatrix& b) {
  double m = 0.0;
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j) m = std::max(m, std::abs(a(i, j) - b(i, j)));
  return m;
}

inline double rel_frobenius_diff(const SymMatrix& a, const SymMatrix& b) {
  return e2d2::norms(e2d2::sym_sub(a, b)).frobenius / e2d2::norms(b).frobenius;
}

// a * b * c for symmetric operands, returned symmetrized (used for Penrose
// condition checks where the product is symmetric in exact arithmetic).
inline SymMatrix mul3(const SymMatrix& a, const SymMatrix& b, const SymMatrix& c) {
  const int n = a.dim();
  const auto ab = e2d2::dense_mul(n, a.data(), b.data());
  const auto abc = e2d2::dense_mul(n, ab, c.data());
  return SymMatrix::from_dense(n, abc);
}

}  // namespace test_support
