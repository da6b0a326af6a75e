#pragma once

#include "oba/objective.hpp"
#include "oba/solver.hpp"

namespace oba {

struct IstaConfig {
  double mu = 0.1;
  double tol = 1e-6;           // on ‖g‖∞
  std::size_t max_iters = 100000;
  std::optional<double> L_override;
};

/// Plain proximal-gradient iteration x ← 𝒮_{μ/L}(x − ∇f(x)/L). Globally
/// linearly convergent on strongly convex problems; serves as the reference
/// solver and test benchmark.
SolveReport ista_solve(const SmoothObjective& obj, const DenseVector& x0,
                       const IstaConfig& cfg);

}  // namespace oba
