#include "oba/oracle.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "oba/subspace.hpp"

namespace oba {

namespace {

// Minimize f(x) + μ ζᵀx over the subspace {x_i = 0 : ζ_i = 0} by damped
// Newton-CG. Returns the stationary point, or nullopt if it fails to reach
// the target accuracy.
std::optional<DenseVector> solve_face(const SmoothObjective& obj, double mu,
                                      const SignVector& zeta) {
  const std::size_t n = obj.dim();
  std::vector<bool> free_mask(n);
  bool any_free = false;
  for (std::size_t i = 0; i < n; ++i) {
    free_mask[i] = zeta[i] != 0;
    any_free = any_free || free_mask[i];
  }
  DenseVector x(n, 0.0);
  if (!any_free) return x;

  constexpr double kTol = 1e-12;
  constexpr std::size_t kNewtonIters = 100;
  for (std::size_t it = 0; it < kNewtonIters; ++it) {
    DenseVector grad = obj.gradient(x);
    for (std::size_t i = 0; i < n; ++i)
      grad[i] = free_mask[i] ? grad[i] + mu * zeta[i] : 0.0;
    double scale = std::max(1.0, norm_inf(x));
    if (norm_inf(grad) <= kTol * scale) return x;

    ReducedSystem sys;
    sys.hess_op = [&obj, &x](const DenseVector& v) { return obj.hess_vec(x, v); };
    sys.rhs_neg = grad;
    sys.free_mask = free_mask;
    sys.ridge = 0.0;
    CgOutcome out = solve_reduced(sys, 1e-14, 20 * n + 50);
    if (out.breakdown) return std::nullopt;

    // backtracking on the face objective keeps logistic losses in check
    double base = obj.value(x) + mu * [&] {
      double s = 0.0;
      for (std::size_t i = 0; i < n; ++i) s += zeta[i] * x[i];
      return s;
    }();
    double gd = dot(grad, out.d);
    double step = 1.0;
    for (int ls = 0; ls < 60; ++ls) {
      DenseVector trial = x;
      axpy(step, out.d, trial);
      double lin = 0.0;
      for (std::size_t i = 0; i < n; ++i) lin += zeta[i] * trial[i];
      double val = obj.value(trial) + mu * lin;
      if (val <= base + 1e-4 * step * gd || val <= base) {
        x = std::move(trial);
        break;
      }
      step *= 0.5;
      if (ls == 59) return std::nullopt;
    }
  }
  DenseVector grad = obj.gradient(x);
  for (std::size_t i = 0; i < n; ++i)
    grad[i] = free_mask[i] ? grad[i] + mu * zeta[i] : 0.0;
  if (norm_inf(grad) <= 1e-10 * std::max(1.0, norm_inf(x))) return x;
  return std::nullopt;
}

bool face_consistent(const DenseVector& x, const SignVector& zeta) {
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (zeta[i] == 0) continue;
    if (x[i] * zeta[i] < 0.0) return false;
  }
  return true;
}

}  // namespace

OracleResult brute_force_oracle(const SmoothObjective& obj, double mu,
                                std::size_t n_max) {
  const std::size_t n = obj.dim();
  if (n > n_max)
    throw std::invalid_argument("brute_force_oracle: dimension exceeds n_max");
  if (!(mu > 0.0))
    throw std::invalid_argument("brute_force_oracle: mu must be > 0");

  OracleResult best;
  best.phi_star = std::numeric_limits<double>::infinity();

  SignVector zeta(n, -1);
  std::size_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= 3;

  for (std::size_t code = 0; code < total; ++code) {
    std::size_t c = code;
    for (std::size_t i = 0; i < n; ++i) {
      zeta[i] = static_cast<std::int8_t>(static_cast<int>(c % 3) - 1);
      c /= 3;
    }
    auto cand = solve_face(obj, mu, zeta);
    if (!cand || !face_consistent(*cand, zeta)) continue;
    double phi = obj.value(*cand) + mu * norm1(*cand);
    if (phi < best.phi_star) {
      best.phi_star = phi;
      best.x_star = *cand;
      best.pattern = zeta;
    }
  }

  if (!std::isfinite(best.phi_star))
    throw std::runtime_error("brute_force_oracle: no consistent face candidate");
  best.g_inf = norm_inf(
      min_norm_subgradient(obj.gradient(best.x_star), best.x_star, mu));
  return best;
}

}  // namespace oba
