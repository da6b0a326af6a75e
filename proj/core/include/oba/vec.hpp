#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace oba {

/// Dense coordinate vector. Double precision throughout.
using DenseVector = std::vector<double>;

inline void check_same_size(const DenseVector& a, const DenseVector& b,
                            const char* where) {
  if (a.size() != b.size())
    throw std::invalid_argument(std::string(where) + ": dimension mismatch");
}

inline double dot(const DenseVector& a, const DenseVector& b) {
  check_same_size(a, b, "dot");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// y += alpha * x
inline void axpy(double alpha, const DenseVector& x, DenseVector& y) {
  check_same_size(x, y, "axpy");
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

inline void scale(DenseVector& x, double alpha) {
  for (double& v : x) v *= alpha;
}

inline double norm_inf(const DenseVector& x) {
  double m = 0.0;
  for (double v : x) m = std::max(m, std::abs(v));
  return m;
}

inline double norm2_sq(const DenseVector& x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return s;
}

inline double norm2(const DenseVector& x) { return std::sqrt(norm2_sq(x)); }

inline double norm1(const DenseVector& x) {
  double s = 0.0;
  for (double v : x) s += std::abs(v);
  return s;
}

inline std::size_t count_nonzeros(const DenseVector& x) {
  std::size_t c = 0;
  for (double v : x)
    if (v != 0.0) ++c;
  return c;
}

inline bool all_finite(const DenseVector& x) {
  for (double v : x)
    if (!std::isfinite(v)) return false;
  return true;
}

// sgn with sgn(0) = 0
inline int sign_of(double v) { return (v > 0.0) - (v < 0.0); }

}  // namespace oba
