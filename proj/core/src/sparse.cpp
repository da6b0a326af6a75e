#include "oba/sparse.hpp"

#include <cmath>
#include <stdexcept>

#include "oba/rng.hpp"

namespace oba {

SparseMatrix::SparseMatrix(std::size_t n_rows, std::size_t n_cols,
                           std::vector<std::size_t> row_ptr,
                           std::vector<std::uint32_t> col_idx,
                           std::vector<double> values)
    : n_rows_(n_rows),
      n_cols_(n_cols),
      row_ptr_(std::move(row_ptr)),
      col_idx_(std::move(col_idx)),
      values_(std::move(values)) {
  if (row_ptr_.size() != n_rows_ + 1 || row_ptr_.front() != 0 ||
      row_ptr_.back() != values_.size() || col_idx_.size() != values_.size())
    throw std::invalid_argument("SparseMatrix: inconsistent CSR arrays");
  for (std::size_t i = 0; i < n_rows_; ++i) {
    if (row_ptr_[i] > row_ptr_[i + 1])
      throw std::invalid_argument("SparseMatrix: row_ptr not monotone");
    for (std::size_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) {
      if (col_idx_[k] >= n_cols_)
        throw std::invalid_argument("SparseMatrix: column index out of range");
      if (k > row_ptr_[i] && col_idx_[k] <= col_idx_[k - 1])
        throw std::invalid_argument(
            "SparseMatrix: column indices not strictly increasing in row");
      if (!std::isfinite(values_[k]))
        throw std::invalid_argument("SparseMatrix: non-finite value");
    }
  }
}

SparseMatrix SparseMatrix::identity(std::size_t n) {
  std::vector<std::size_t> rp(n + 1);
  std::vector<std::uint32_t> ci(n);
  std::vector<double> v(n, 1.0);
  for (std::size_t i = 0; i < n; ++i) {
    rp[i + 1] = i + 1;
    ci[i] = static_cast<std::uint32_t>(i);
  }
  return SparseMatrix(n, n, std::move(rp), std::move(ci), std::move(v));
}

SparseMatrix SparseMatrix::from_dense(std::size_t n_rows, std::size_t n_cols,
                                      const std::vector<double>& dense) {
  if (dense.size() != n_rows * n_cols)
    throw std::invalid_argument("from_dense: size mismatch");
  std::vector<std::size_t> rp(n_rows + 1, 0);
  std::vector<std::uint32_t> ci;
  std::vector<double> v;
  for (std::size_t i = 0; i < n_rows; ++i) {
    for (std::size_t j = 0; j < n_cols; ++j) {
      double x = dense[i * n_cols + j];
      if (x != 0.0) {
        ci.push_back(static_cast<std::uint32_t>(j));
        v.push_back(x);
      }
    }
    rp[i + 1] = v.size();
  }
  return SparseMatrix(n_rows, n_cols, std::move(rp), std::move(ci), std::move(v));
}

DenseVector SparseMatrix::matvec(const DenseVector& v) const {
  if (v.size() != n_cols_)
    throw std::invalid_argument("matvec: dimension mismatch");
  DenseVector out(n_rows_, 0.0);
  for (std::size_t i = 0; i < n_rows_; ++i) {
    double s = 0.0;
    for (std::size_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k)
      s += values_[k] * v[col_idx_[k]];
    out[i] = s;
  }
  return out;
}

DenseVector SparseMatrix::matvec_transpose(const DenseVector& v) const {
  if (v.size() != n_rows_)
    throw std::invalid_argument("matvec_transpose: dimension mismatch");
  DenseVector out(n_cols_, 0.0);
  for (std::size_t i = 0; i < n_rows_; ++i) {
    double vi = v[i];
    if (vi == 0.0) continue;
    for (std::size_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k)
      out[col_idx_[k]] += values_[k] * vi;
  }
  return out;
}

void SparseMatrix::add_scaled_row_to(std::size_t i, double alpha,
                                     DenseVector& out) const {
  for (std::size_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k)
    out[col_idx_[k]] += alpha * values_[k];
}

double SparseMatrix::row_dot(std::size_t i, const DenseVector& v) const {
  double s = 0.0;
  for (std::size_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k)
    s += values_[k] * v[col_idx_[k]];
  return s;
}

double estimate_spectral_norm_sq(const SparseMatrix& a, std::size_t iters,
                                 std::uint64_t seed) {
  if (iters < 1) throw std::invalid_argument("estimate_spectral_norm_sq: iters >= 1");
  if (a.nnz() == 0) return 0.0;
  Uniform01 rng(seed);
  DenseVector v(a.cols());
  for (double& x : v) x = rng.next_signed();
  double nv = norm2(v);
  if (nv == 0.0) v[0] = 1.0, nv = 1.0;
  scale(v, 1.0 / nv);

  double lambda = 0.0;
  for (std::size_t it = 0; it < iters; ++it) {
    DenseVector w = a.matvec_transpose(a.matvec(v));
    double nw = norm2(w);
    if (nw == 0.0) return 0.0;  // v in the null space; matrix effectively zero on it
    lambda = dot(v, w);         // Rayleigh quotient for AᵀA
    scale(w, 1.0 / nw);
    v = std::move(w);
  }
  return lambda;
}

}  // namespace oba
