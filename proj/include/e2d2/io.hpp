#pragma once

// Text fixtures. Matrix format: first line is p, followed by p rows of p
// whitespace-separated values. Vector format: first line is p, then one row.
// All values are written with %.17g so files round-trip doubles exactly.

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "e2d2/errors.hpp"
#include "e2d2/matrix.hpp"

namespace e2d2 {

inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return std::string(buf);
}

inline void write_matrix(std::ostream& os, const SymMatrix& a) {
  const int p = a.dim();
  os << p << "\n";
  for (int i = 0; i < p; ++i) {
    for (int j = 0; j < p; ++j) {
      if (j) os << ' ';
      os << format_double(a(i, j));
    }
    os << "\n";
  }
}

inline void write_matrix_file(const std::string& path, const SymMatrix& a) {
  std::ofstream os(path);
  if (!os) throw IoError("cannot open for writing: " + path);
  write_matrix(os, a);
  if (!os) throw IoError("write failed: " + path);
}

inline SymMatrix read_matrix(std::istream& is, const std::string& what = "matrix") {
  int p = 0;
  if (!(is >> p) || p < 1) throw IoError("bad dimension line in " + what);
  std::vector<double> data(std::size_t(p) * p);
  for (auto& v : data) {
    if (!(is >> v)) throw IoError("truncated " + what + " data");
  }
  return SymMatrix::from_dense(p, data);
}

inline SymMatrix read_matrix_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw IoError("cannot open: " + path);
  return read_matrix(is, path);
}

inline void write_vector(std::ostream& os, const Vector& v) {
  os << v.size() << "\n";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) os << ' ';
    os << format_double(v[i]);
  }
  os << "\n";
}

inline void write_vector_file(const std::string& path, const Vector& v) {
  std::ofstream os(path);
  if (!os) throw IoError("cannot open for writing: " + path);
  write_vector(os, v);
  if (!os) throw IoError("write failed: " + path);
}

inline Vector read_vector(std::istream& is, const std::string& what = "vector") {
  int p = 0;
  if (!(is >> p) || p < 1) throw IoError("bad length line in " + what);
  Vector v(std::size_t(p), 0.0);
  for (auto& x : v) {
    if (!(is >> x)) throw IoError("truncated " + what + " data");
  }
  return v;
}

inline Vector read_vector_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw IoError("cannot open: " + path);
  return read_vector(is, path);
}

inline std::string read_whole_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot open: " + path);
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

inline void write_whole_file(const std::string& path, const std::string& content) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot open for writing: " + path);
  os << content;
  if (!os) throw IoError("write failed: " + path);
}

}  // namespace e2d2
