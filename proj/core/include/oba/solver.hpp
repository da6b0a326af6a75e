#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "oba/objective.hpp"
#include "oba/orthant.hpp"
#include "oba/subspace.hpp"

namespace oba {

struct SolverConfig {
  double mu = 0.1;            // ℓ1 penalty, > 0
  double eta = 0.01;          // initial free-budget fraction, in (0,1)
  double eps = 1e-4;          // segment-search cutoff
  double cg_rel_tol = 0.1;    // inner relative-residual tolerance
  double cg_ridge = 1e-8;     // ridge added to the subspace operator
  double outer_tol = 1e-6;    // stop when ‖g‖∞ falls below this
  std::size_t max_outer_iters = 1000;
  std::size_t max_cycle_iters = 0;  // 0: |U_F| + 1 bound
  std::optional<std::size_t> cg_max_iters;  // default: free dimension
  std::optional<double> L_override;
  std::optional<double> time_cap_seconds;  // stop after this much wall time
  std::uint64_t seed = 0;

  void validate() const;
};

struct IterationTrace {
  std::size_t iter = 0;
  double seconds = 0.0;       // elapsed since solve start
  double phi = 0.0;           // φ(x^k) at the start of the iteration
  double g_inf = 0.0;
  std::size_t nnz = 0;
  std::size_t cycle_passes = 0;   // j
  std::size_t cg_iters = 0;       // summed over cycle passes
  double cg_rel_residual = 0.0;   // final pass
  double alpha = 1.0;             // projected line-search step
  double alpha_bar = 1.0;         // segment-search step (0 = ISTA fallback)
  double gamma = 0.0;             // surrogate bound Γ^k
  std::size_t ls_halvings = 0;
  bool fallback = false;          // ᾱ < 1
};

enum class Termination { kTolerance, kMaxIters, kTimeCap };

struct SolveReport {
  DenseVector x;
  double phi = 0.0;
  double g_inf = 0.0;
  std::vector<IterationTrace> trace;
  Termination termination = Termination::kMaxIters;
  std::size_t fallback_count = 0;       // iterations with ᾱ < 1
  std::size_t max_ls_halvings = 0;
  std::size_t max_cycle_passes = 0;
  double solve_seconds = 0.0;
};

struct CycleRecord {
  std::size_t passes = 0;                  // j
  std::size_t initial_free_budget = 0;     // |U_F| at entry
  std::vector<std::size_t> demoted_per_pass;
  std::vector<std::size_t> cg_iters_per_pass;
  double final_cg_rel_residual = 0.0;
  std::size_t total_cg_iters = 0;
};

/// Top-|g| selection of the unsure variables that may move this iteration.
/// Ties at the cutoff break toward the lower index (stable order).
/// Returns (U_F, U_A).
std::pair<std::vector<std::size_t>, std::vector<std::size_t>> select_free_set(
    const OrthantState& state, std::size_t tau);

/// One proximal-gradient step: 𝒮_{μ/L}(x − ∇f(x)/L).
DenseVector ista_step(const DenseVector& x, const DenseVector& grad, double L,
                      double mu);

/// Upper quadratic bound on φ at the proximal point,
/// Γ = f(x) + ∇f(x)ᵀ(x_p − x) + (L/2)‖x_p − x‖² + μ‖x_p‖₁.
double surrogate_gamma(const DenseVector& x, const DenseVector& x_prox,
                       double f_x, const DenseVector& grad_x, double L,
                       double mu);

class ObaSolver {
 public:
  ObaSolver(const SmoothObjective& obj, SolverConfig cfg);

  SolveReport solve(const DenseVector& x0);

  /// Repeated subspace solves that demote free variables whose step sign
  /// contradicts the orthant prediction, until every prediction holds.
  /// `fixed` is updated in place (demotions become permanent for this
  /// iteration); returns the final direction, zero on all fixed coordinates.
  std::pair<DenseVector, CycleRecord> corrective_cycle(
      const DenseVector& x, const OrthantState& state,
      std::vector<std::size_t>& free_candidates, std::vector<bool>& fixed);

  /// Largest α ∈ {1, ½, ¼, …} with q(𝒫(x + αd)) ≤ q(x). Throws if the step
  /// is not a descent direction for the model (α underflow).
  std::tuple<DenseVector, double, std::size_t> projected_line_search(
      const DenseVector& x, const DenseVector& d, const SignVector& zeta,
      const PiecewiseQuadModel& model) const;

  /// Backtrack ᾱ from 1 along x_prox + ᾱ(x_hat − x_prox) until φ ≤ Γ;
  /// ᾱ collapses to 0 (the proximal point) below the ε cutoff.
  std::pair<DenseVector, double> globalize(const DenseVector& x_hat,
                                           const DenseVector& x_prox,
                                           double gamma) const;

  double lipschitz() const { return L_; }

 private:
  const SmoothObjective& obj_;
  SolverConfig cfg_;
  double L_;
};

/// Convenience wrapper.
SolveReport solve(const SmoothObjective& obj, const DenseVector& x0,
                  const SolverConfig& cfg);

}  // namespace oba
