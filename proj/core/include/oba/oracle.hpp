#pragma once

#include "oba/objective.hpp"
#include "oba/orthant.hpp"

namespace oba {

struct OracleResult {
  DenseVector x_star;
  double phi_star = 0.0;
  SignVector pattern;     // sign pattern of the optimal orthant face
  double g_inf = 0.0;     // ‖g(x*)‖∞, certificate of optimality
};

/// Certified minimizer of f + μ‖·‖₁ by exhaustive enumeration of all 3ⁿ
/// orthant faces. On each face the smooth problem min f(x) + μζᵀx (with
/// x_i = 0 where ζ_i = 0) is solved to high accuracy by Newton-CG;
/// candidates whose signs contradict the face are discarded. Intended as a
/// test oracle for tiny instances; refuses n > n_max.
OracleResult brute_force_oracle(const SmoothObjective& obj, double mu,
                                std::size_t n_max = 12);

}  // namespace oba
