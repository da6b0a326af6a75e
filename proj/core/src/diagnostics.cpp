#include "oba/diagnostics.hpp"

#include <cmath>
#include <stdexcept>

namespace oba {

double relative_error(double phi_k, double phi_star) {
  if (phi_k < phi_star - 1e-6)
    throw std::invalid_argument(
        "relative_error: phi_k below reference; phi_star is not optimal");
  double r = (phi_k - phi_star) / (1.0 + phi_star);
  return r < 0.0 ? 0.0 : r;
}

double sparsity_percent(const DenseVector& x, double zero_tol) {
  if (zero_tol < 0.0)
    throw std::invalid_argument("sparsity_percent: zero_tol must be >= 0");
  if (x.empty()) return 100.0;
  std::size_t zeros = 0;
  for (double v : x)
    if (std::abs(v) <= zero_tol) ++zeros;
  return 100.0 * static_cast<double>(zeros) / static_cast<double>(x.size());
}

double diagonal_dominance(const SmoothObjective& obj, const DenseVector& x,
                          std::size_t n_cap) {
  const std::size_t n = obj.dim();
  if (n > n_cap)
    throw std::invalid_argument(
        "diagonal_dominance: dimension exceeds n_cap; raise the cap to force");
  if (x.size() != n)
    throw std::invalid_argument("diagonal_dominance: x dimension mismatch");

  double max_col_norm = 0.0;
  double max_diag = 0.0;
  DenseVector e(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    e[i] = 1.0;
    DenseVector col = obj.hess_vec(x, e);
    e[i] = 0.0;
    max_col_norm = std::max(max_col_norm, norm2(col));
    max_diag = std::max(max_diag, std::abs(col[i]));
  }
  if (max_diag == 0.0)
    throw std::runtime_error("diagonal_dominance: Hessian diagonal is zero");
  return max_col_norm / max_diag;
}

}  // namespace oba
