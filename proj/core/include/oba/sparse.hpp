#pragma once

#include <cstdint>
#include <vector>

#include "oba/vec.hpp"

namespace oba {

/// Row-compressed sparse matrix. Column indices are strictly increasing
/// within each row and all stored values are finite; both are enforced at
/// construction. A single storage serves both A·v (row dot products) and
/// Aᵀ·v (row scatter), so the transpose is never materialized.
class SparseMatrix {
 public:
  SparseMatrix() = default;

  // CSR pieces, validated.
  SparseMatrix(std::size_t n_rows, std::size_t n_cols,
               std::vector<std::size_t> row_ptr, std::vector<std::uint32_t> col_idx,
               std::vector<double> values);

  static SparseMatrix identity(std::size_t n);

  // Skips exact zeros. `dense` is row-major, n_rows x n_cols.
  static SparseMatrix from_dense(std::size_t n_rows, std::size_t n_cols,
                                 const std::vector<double>& dense);

  std::size_t rows() const { return n_rows_; }
  std::size_t cols() const { return n_cols_; }
  std::size_t nnz() const { return values_.size(); }

  const std::vector<std::size_t>& row_ptr() const { return row_ptr_; }
  const std::vector<std::uint32_t>& col_idx() const { return col_idx_; }
  const std::vector<double>& values() const { return values_; }

  DenseVector matvec(const DenseVector& v) const;
  DenseVector matvec_transpose(const DenseVector& v) const;

  // result += alpha * A_row(i) . scattered; used by loss Hessians
  void add_scaled_row_to(std::size_t i, double alpha, DenseVector& out) const;
  double row_dot(std::size_t i, const DenseVector& v) const;

 private:
  std::size_t n_rows_ = 0, n_cols_ = 0;
  std::vector<std::size_t> row_ptr_{0};
  std::vector<std::uint32_t> col_idx_;
  std::vector<double> values_;
};

/// Estimate of ‖A‖₂² by power iteration on AᵀA. Deterministic for a fixed
/// seed; returns 0 for an all-zero matrix. The estimate approaches the true
/// value from below.
double estimate_spectral_norm_sq(const SparseMatrix& a, std::size_t iters,
                                 std::uint64_t seed);

}  // namespace oba
