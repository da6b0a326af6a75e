#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "oba/vec.hpp"

namespace oba {

/// The reduced quadratic  min_d dᵀg + ½dᵀ(H + δI)d  s.t. d_i = 0 on the
/// fixed coordinates. The Hessian is applied as an operator embedded on the
/// free subspace; the ridge δ lives inside the operator, never in stored data.
struct ReducedSystem {
  std::function<DenseVector(const DenseVector&)> hess_op;  // full-length H·v
  DenseVector rhs_neg;              // g, full length; solved system is (H+δI)d = −g
  std::vector<bool> free_mask;      // true where the coordinate may move
  double ridge = 1e-8;
};

struct CgOutcome {
  DenseVector d;                // full length, exact zeros on fixed coordinates
  std::size_t iterations = 0;
  double final_rel_residual = 0.0;  // ‖(H+δI)d + g‖∞ / ‖g‖∞ on free coords
  bool converged = false;
  bool breakdown = false;       // NaN in the recurrence or negative curvature
};

/// Conjugate gradients on the free subspace with an ∞-norm relative-residual
/// stopping test evaluated on the true residual. A warm start is accepted
/// (coordinates outside the free mask are zeroed first). Zero rhs returns
/// d = 0 immediately.
CgOutcome solve_reduced(const ReducedSystem& sys, double rel_tol,
                        std::size_t max_iters,
                        const DenseVector* warm_start = nullptr);

}  // namespace oba
