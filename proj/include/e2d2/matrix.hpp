#pragma once

// Dense symmetric-matrix kernels: Cholesky factorization, SPD inversion,
// Jacobi eigendecomposition, Moore-Penrose pseudo-inverse, and the
// entrywise/induced norms used throughout the library. Everything here is
// double precision and dense; the dimensions this library targets (p up to
// a few hundred) do not justify sparse storage.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "e2d2/errors.hpp"

namespace e2d2 {

using Vector = std::vector<double>;

inline double dot(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) {
    throw DimensionMismatch("dot: vector lengths " + std::to_string(a.size()) +
                            " vs " + std::to_string(b.size()));
  }
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline Vector vec_sub(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) {
    throw DimensionMismatch("vec_sub: length mismatch");
  }
  Vector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

inline Vector vec_add(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) {
    throw DimensionMismatch("vec_add: length mismatch");
  }
  Vector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

inline Vector vec_scale(const Vector& a, double c) {
  Vector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = c * a[i];
  return r;
}

inline double norm2(const Vector& a) { return std::sqrt(dot(a, a)); }

// Symmetric p x p matrix with full row-major storage. Symmetry is an exact
// invariant: construction from arbitrary dense data averages (A + A^T)/2,
// and set() writes both triangles.
class SymMatrix {
 public:
  explicit SymMatrix(int dim) : dim_(check_dim(dim)), a_(std::size_t(dim) * dim, 0.0) {}

  static SymMatrix identity(int dim) {
    SymMatrix m(dim);
    for (int i = 0; i < dim; ++i) m.a_[std::size_t(i) * dim + i] = 1.0;
    return m;
  }

  static SymMatrix diagonal(const Vector& d) {
    SymMatrix m(static_cast<int>(d.size()));
    for (int i = 0; i < m.dim_; ++i) {
      check_finite(d[std::size_t(i)]);
      m.a_[std::size_t(i) * m.dim_ + i] = d[std::size_t(i)];
    }
    return m;
  }

  // Builds from row-major dense data, symmetrizing as (A + A^T)/2 so that
  // rounding drift in products like Theta*Sigma*Theta never leaks through.
  static SymMatrix from_dense(int dim, const std::vector<double>& data) {
    if (data.size() != std::size_t(dim) * std::size_t(dim)) {
      throw DimensionMismatch("from_dense: expected " + std::to_string(dim) +
                              "^2 entries, got " + std::to_string(data.size()));
    }
    SymMatrix m(dim);
    for (int i = 0; i < dim; ++i) {
      for (int j = 0; j <= i; ++j) {
        const double v = 0.5 * (data[std::size_t(i) * dim + j] + data[std::size_t(j) * dim + i]);
        check_finite(v);
        m.a_[std::size_t(i) * dim + j] = v;
        m.a_[std::size_t(j) * dim + i] = v;
      }
    }
    return m;
  }

  int dim() const { return dim_; }

  double operator()(int i, int j) const { return a_[std::size_t(i) * dim_ + j]; }

  void set(int i, int j, double v) {
    check_finite(v);
    a_[std::size_t(i) * dim_ + j] = v;
    a_[std::size_t(j) * dim_ + i] = v;
  }

  const std::vector<double>& data() const { return a_; }

  const double* row(int i) const { return a_.data() + std::size_t(i) * dim_; }

  Vector diagonal_vector() const {
    Vector d(std::size_t(dim_), 0.0);
    for (int i = 0; i < dim_; ++i) d[std::size_t(i)] = (*this)(i, i);
    return d;
  }

  bool operator==(const SymMatrix& o) const { return dim_ == o.dim_ && a_ == o.a_; }

 private:
  static int check_dim(int dim) {
    if (dim < 1) throw InvalidSpec("SymMatrix: dim must be >= 1, got " + std::to_string(dim));
    return dim;
  }
  static void check_finite(double v) {
    if (!std::isfinite(v)) throw NonFiniteInput("SymMatrix: non-finite entry");
  }

  int dim_;
  std::vector<double> a_;
};

struct MatrixNorms {
  double frobenius;      // sqrt(sum a_ij^2)
  double entrywise_l1;   // sum |a_ij|
  double entrywise_max;  // max |a_ij|
  double induced_inf;    // max_i sum_j |a_ij|
};

inline MatrixNorms norms(const SymMatrix& a) {
  const int p = a.dim();
  double fro2 = 0.0, l1 = 0.0, mx = 0.0, inf = 0.0;
  for (int i = 0; i < p; ++i) {
    double row_abs = 0.0;
    const double* r = a.row(i);
    for (int j = 0; j < p; ++j) {
      const double v = std::abs(r[j]);
      fro2 += v * v;
      l1 += v;
      row_abs += v;
      if (v > mx) mx = v;
    }
    if (row_abs > inf) inf = row_abs;
  }
  return {std::sqrt(fro2), l1, mx, inf};
}

// Lower-triangular Cholesky factor L with L * L^T = A.
class CholeskyFactor {
 public:
  CholeskyFactor(int dim, std::vector<double> lower) : dim_(dim), l_(std::move(lower)) {}

  int dim() const { return dim_; }
  double operator()(int i, int j) const { return l_[std::size_t(i) * dim_ + j]; }
  const std::vector<double>& lower() const { return l_; }

  double log_det() const {
    // log det A = 2 * sum log L_ii
    double s = 0.0;
    for (int i = 0; i < dim_; ++i) s += std::log((*this)(i, i));
    return 2.0 * s;
  }

  // Solves A x = b via the two triangular solves.
  Vector solve(const Vector& b) const {
    if (static_cast<int>(b.size()) != dim_) {
      throw DimensionMismatch("CholeskyFactor::solve: size mismatch");
    }
    Vector y(b);
    for (int i = 0; i < dim_; ++i) {
      double s = y[std::size_t(i)];
      for (int j = 0; j < i; ++j) s -= (*this)(i, j) * y[std::size_t(j)];
      y[std::size_t(i)] = s / (*this)(i, i);
    }
    for (int i = dim_ - 1; i >= 0; --i) {
      double s = y[std::size_t(i)];
      for (int j = i + 1; j < dim_; ++j) s -= (*this)(j, i) * y[std::size_t(j)];
      y[std::size_t(i)] = s / (*this)(i, i);
    }
    return y;
  }

  // A^{-1} = L^{-T} L^{-1}, returned exactly symmetric.
  SymMatrix inverse() const {
    const int p = dim_;
    // Linv, lower triangular, column by column.
    std::vector<double> linv(std::size_t(p) * p, 0.0);
    for (int j = 0; j < p; ++j) {
      linv[std::size_t(j) * p + j] = 1.0 / (*this)(j, j);
      for (int i = j + 1; i < p; ++i) {
        double s = 0.0;
        for (int k = j; k < i; ++k) s += (*this)(i, k) * linv[std::size_t(k) * p + j];
        linv[std::size_t(i) * p + j] = -s / (*this)(i, i);
      }
    }
    SymMatrix inv(p);
    for (int i = 0; i < p; ++i) {
      for (int j = 0; j <= i; ++j) {
        double s = 0.0;
        for (int k = i; k < p; ++k) {
          s += linv[std::size_t(k) * p + i] * linv[std::size_t(k) * p + j];
        }
        inv.set(i, j, s);
      }
    }
    return inv;
  }

  SymMatrix reconstruct() const {
    const int p = dim_;
    SymMatrix a(p);
    for (int i = 0; i < p; ++i) {
      for (int j = 0; j <= i; ++j) {
        double s = 0.0;
        for (int k = 0; k <= j; ++k) s += (*this)(i, k) * (*this)(j, k);
        a.set(i, j, s);
      }
    }
    return a;
  }

 private:
  int dim_;
  std::vector<double> l_;  // row-major, zeros above the diagonal
};

// Cholesky with a scale-invariant positive-definiteness test: a pivot is
// rejected when d <= p * eps * max_diag (LAPACK-style threshold).
inline CholeskyFactor cholesky(const SymMatrix& a) {
  const int p = a.dim();
  double max_diag = 0.0;
  for (int i = 0; i < p; ++i) max_diag = std::max(max_diag, a(i, i));
  if (max_diag <= 0.0) {
    throw NotPositiveDefinite("cholesky: no positive diagonal entry");
  }
  const double pivot_floor = p * std::numeric_limits<double>::epsilon() * max_diag;

  std::vector<double> l(std::size_t(p) * p, 0.0);
  for (int j = 0; j < p; ++j) {
    double d = a(j, j);
    for (int k = 0; k < j; ++k) d -= l[std::size_t(j) * p + k] * l[std::size_t(j) * p + k];
    if (d <= pivot_floor) {
      throw NotPositiveDefinite("cholesky: pivot " + std::to_string(d) + " at index " +
                                std::to_string(j) + " below threshold " +
                                std::to_string(pivot_floor));
    }
    const double ljj = std::sqrt(d);
    l[std::size_t(j) * p + j] = ljj;
    for (int i = j + 1; i < p; ++i) {
      double s = a(i, j);
      for (int k = 0; k < j; ++k) s -= l[std::size_t(i) * p + k] * l[std::size_t(j) * p + k];
      l[std::size_t(i) * p + j] = s / ljj;
    }
  }
  return CholeskyFactor(p, std::move(l));
}

inline SymMatrix invert_spd(const SymMatrix& a) { return cholesky(a).inverse(); }

inline bool is_positive_definite(const SymMatrix& a) {
  try {
    cholesky(a);
    return true;
  } catch (const NotPositiveDefinite&) {
    return false;
  }
}

struct SymEigen {
  Vector values;                // eigenvalues, unordered
  std::vector<double> vectors;  // row-major p x p; column k is the k-th eigenvector
};

// Cyclic Jacobi eigendecomposition. Quadratically convergent; well suited to
// the symmetric inputs and moderate dimensions used here.
inline SymEigen eigen_sym(const SymMatrix& input) {
  const int p = input.dim();
  std::vector<double> a(input.data());
  std::vector<double> v(std::size_t(p) * p, 0.0);
  for (int i = 0; i < p; ++i) v[std::size_t(i) * p + i] = 1.0;

  auto at = [&](int i, int j) -> double& { return a[std::size_t(i) * p + j]; };

  double fro2 = 0.0;
  for (double x : a) fro2 += x * x;
  const double off_tol = std::numeric_limits<double>::epsilon() * std::sqrt(fro2 + 1e-300);

  const int max_sweeps = 64;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double off = 0.0;
    for (int i = 0; i < p; ++i)
      for (int j = i + 1; j < p; ++j) off += at(i, j) * at(i, j);
    if (std::sqrt(2.0 * off) <= off_tol) break;

    for (int q = 1; q < p; ++q) {
      for (int pp = 0; pp < q; ++pp) {
        const double apq = at(pp, q);
        if (apq == 0.0) continue;
        const double app = at(pp, pp);
        const double aqq = at(q, q);
        const double tau = (aqq - app) / (2.0 * apq);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;

        at(pp, pp) = app - t * apq;
        at(q, q) = aqq + t * apq;
        at(pp, q) = 0.0;
        at(q, pp) = 0.0;
        for (int i = 0; i < p; ++i) {
          if (i == pp || i == q) continue;
          const double aip = at(i, pp);
          const double aiq = at(i, q);
          at(i, pp) = c * aip - s * aiq;
          at(pp, i) = at(i, pp);
          at(i, q) = s * aip + c * aiq;
          at(q, i) = at(i, q);
        }
        for (int i = 0; i < p; ++i) {
          const double vip = v[std::size_t(i) * p + pp];
          const double viq = v[std::size_t(i) * p + q];
          v[std::size_t(i) * p + pp] = c * vip - s * viq;
          v[std::size_t(i) * p + q] = s * vip + c * viq;
        }
      }
    }
  }

  SymEigen e;
  e.values.resize(std::size_t(p));
  for (int i = 0; i < p; ++i) e.values[std::size_t(i)] = at(i, i);
  e.vectors = std::move(v);
  return e;
}

// Moore-Penrose pseudo-inverse through the symmetric eigendecomposition.
// Eigenvalues with |lambda| <= rtol * |lambda|_max are treated as zero.
inline SymMatrix pseudo_inverse(const SymMatrix& a, double rtol = 1e-10) {
  if (rtol <= 0.0) throw InvalidSpec("pseudo_inverse: rtol must be > 0");
  const int p = a.dim();
  const SymEigen e = eigen_sym(a);
  double lam_max = 0.0;
  for (double lam : e.values) lam_max = std::max(lam_max, std::abs(lam));
  const double cutoff = rtol * lam_max;

  Vector inv_vals(std::size_t(p), 0.0);
  for (int k = 0; k < p; ++k) {
    const double lam = e.values[std::size_t(k)];
    if (std::abs(lam) > cutoff) inv_vals[std::size_t(k)] = 1.0 / lam;
  }
  SymMatrix x(p);
  for (int i = 0; i < p; ++i) {
    for (int j = 0; j <= i; ++j) {
      double s = 0.0;
      for (int k = 0; k < p; ++k) {
        s += inv_vals[std::size_t(k)] * e.vectors[std::size_t(i) * p + k] *
             e.vectors[std::size_t(j) * p + k];
      }
      x.set(i, j, s);
    }
  }
  return x;
}

// Row-major dense product helpers (results of symmetric*symmetric products
// are not symmetric in general, so these work on raw buffers).
inline std::vector<double> dense_mul(int n, const std::vector<double>& a,
                                     const std::vector<double>& b) {
  std::vector<double> c(std::size_t(n) * n, 0.0);
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      const double aik = a[std::size_t(i) * n + k];
      if (aik == 0.0) continue;
      const double* brow = b.data() + std::size_t(k) * n;
      double* crow = c.data() + std::size_t(i) * n;
      for (int j = 0; j < n; ++j) crow[j] += aik * brow[j];
    }
  }
  return c;
}

// outer * inner * outer, symmetrized.
inline SymMatrix sandwich(const SymMatrix& outer, const SymMatrix& inner) {
  if (outer.dim() != inner.dim()) throw DimensionMismatch("sandwich: dimension mismatch");
  const int n = outer.dim();
  const std::vector<double> tmp = dense_mul(n, outer.data(), inner.data());
  const std::vector<double> res = dense_mul(n, tmp, outer.data());
  return SymMatrix::from_dense(n, res);
}

inline Vector matvec(const SymMatrix& a, const Vector& x) {
  const int p = a.dim();
  if (static_cast<int>(x.size()) != p) throw DimensionMismatch("matvec: size mismatch");
  Vector y(std::size_t(p), 0.0);
  for (int i = 0; i < p; ++i) {
    const double* r = a.row(i);
    double s = 0.0;
    for (int j = 0; j < p; ++j) s += r[j] * x[std::size_t(j)];
    y[std::size_t(i)] = s;
  }
  return y;
}

inline double quad_form(const SymMatrix& a, const Vector& x) { return dot(x, matvec(a, x)); }

inline double bilinear(const Vector& x, const SymMatrix& a, const Vector& y) {
  return dot(x, matvec(a, y));
}

// A - B entrywise (dimensions must agree).
inline SymMatrix sym_sub(const SymMatrix& a, const SymMatrix& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("sym_sub: dimension mismatch");
  SymMatrix r(a.dim());
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j <= i; ++j) r.set(i, j, a(i, j) - b(i, j));
  return r;
}

inline SymMatrix sym_scale(const SymMatrix& a, double c) {
  SymMatrix r(a.dim());
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j <= i; ++j) r.set(i, j, c * a(i, j));
  return r;
}

}  // namespace e2d2
