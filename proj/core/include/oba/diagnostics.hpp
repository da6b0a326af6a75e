#pragma once

#include "oba/objective.hpp"
#include "oba/vec.hpp"

namespace oba {

/// (φ_k − φ*) / (1 + φ*). Throws when φ_k undercuts the reference by more
/// than 10⁻⁶ (a sign the reference value is bad); smaller undershoots clamp
/// to 0.
double relative_error(double phi_k, double phi_star);

/// 100 · |{i : |x_i| ≤ zero_tol}| / n. The default tolerance is exactly 0:
/// the solvers produce exact zeros by construction.
double sparsity_percent(const DenseVector& x, double zero_tol = 0.0);

/// Diagonal-dominance level of ∇²f(x): max column 2-norm over max |diagonal|.
/// Columns are probed one unit vector at a time (n Hessian-vector products),
/// so the dimension is refused above n_cap.
double diagonal_dominance(const SmoothObjective& obj, const DenseVector& x,
                          std::size_t n_cap = 10000);

}  // namespace oba
