#include "oba/ista.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

#include "oba/orthant.hpp"

namespace oba {

SolveReport ista_solve(const SmoothObjective& obj, const DenseVector& x0,
                       const IstaConfig& cfg) {
  if (!(cfg.mu > 0.0)) throw std::invalid_argument("ista_solve: mu must be > 0");
  if (x0.size() != obj.dim())
    throw std::invalid_argument("ista_solve: x0 dimension mismatch");
  double L = cfg.L_override ? *cfg.L_override : obj.lipschitz_L();
  if (!(L > 0.0)) throw std::invalid_argument("ista_solve: L must be > 0");

  SolveReport report;
  DenseVector x = x0;
  auto t0 = std::chrono::steady_clock::now();
  std::size_t k = 0;
  for (; k < cfg.max_iters; ++k) {
    DenseVector grad = obj.gradient(x);
    DenseVector g = min_norm_subgradient(grad, x, cfg.mu);
    double g_inf = norm_inf(g);
    if (g_inf <= cfg.tol) {
      report.termination = Termination::kTolerance;
      break;
    }
    IterationTrace t;
    t.iter = k;
    t.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                    .count();
    t.phi = obj.value(x) + cfg.mu * norm1(x);
    t.g_inf = g_inf;
    t.nnz = count_nonzeros(x);
    report.trace.push_back(t);

    x = ista_step(x, grad, L, cfg.mu);
  }
  if (k == cfg.max_iters) report.termination = Termination::kMaxIters;

  report.x = std::move(x);
  report.phi = obj.value(report.x) + cfg.mu * norm1(report.x);
  report.g_inf =
      norm_inf(min_norm_subgradient(obj.gradient(report.x), report.x, cfg.mu));
  report.solve_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return report;
}

}  // namespace oba
