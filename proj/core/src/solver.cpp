#include "oba/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

namespace oba {

namespace {
constexpr std::size_t kMaxLineSearchTrials = 60;
constexpr double kAlphaUnderflow = 1e-30;

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}
}  // namespace

void SolverConfig::validate() const {
  if (!(mu > 0.0)) throw std::invalid_argument("SolverConfig: mu must be > 0");
  if (!(eta > 0.0 && eta < 1.0))
    throw std::invalid_argument("SolverConfig: eta must be in (0,1)");
  if (!(eps > 0.0)) throw std::invalid_argument("SolverConfig: eps must be > 0");
  if (!(cg_rel_tol > 0.0 && cg_rel_tol < 1.0))
    throw std::invalid_argument("SolverConfig: cg_rel_tol must be in (0,1)");
  if (!(outer_tol > 0.0))
    throw std::invalid_argument("SolverConfig: outer_tol must be > 0");
  if (cg_ridge < 0.0)
    throw std::invalid_argument("SolverConfig: cg_ridge must be >= 0");
  if (L_override && !(*L_override > 0.0))
    throw std::invalid_argument("SolverConfig: L override must be > 0");
}

std::pair<std::vector<std::size_t>, std::vector<std::size_t>> select_free_set(
    const OrthantState& state, std::size_t tau) {
  if (tau < 1) throw std::invalid_argument("select_free_set: tau must be >= 1");
  std::vector<std::size_t> order = state.unsure_idx;  // ascending index order
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) {
                     return std::abs(state.g[a]) > std::abs(state.g[b]);
                   });
  std::size_t tau_hat = std::min(order.size(), tau);
  std::vector<std::size_t> u_free(order.begin(), order.begin() + tau_hat);
  std::vector<std::size_t> u_fixed(order.begin() + tau_hat, order.end());
  return {std::move(u_free), std::move(u_fixed)};
}

DenseVector ista_step(const DenseVector& x, const DenseVector& grad, double L,
                      double mu) {
  if (!(L > 0.0)) throw std::invalid_argument("ista_step: L must be > 0");
  DenseVector z = x;
  axpy(-1.0 / L, grad, z);
  return soft_threshold(z, mu / L);
}

double surrogate_gamma(const DenseVector& x, const DenseVector& x_prox,
                       double f_x, const DenseVector& grad_x, double L,
                       double mu) {
  DenseVector s = x_prox;
  axpy(-1.0, x, s);
  return f_x + dot(grad_x, s) + 0.5 * L * norm2_sq(s) + mu * norm1(x_prox);
}

ObaSolver::ObaSolver(const SmoothObjective& obj, SolverConfig cfg)
    : obj_(obj), cfg_(std::move(cfg)) {
  cfg_.validate();
  L_ = cfg_.L_override ? *cfg_.L_override : obj_.lipschitz_L();
  if (!(L_ > 0.0) || !std::isfinite(L_))
    throw std::invalid_argument("ObaSolver: Lipschitz policy produced L <= 0");
}

std::pair<DenseVector, CycleRecord> ObaSolver::corrective_cycle(
    const DenseVector& x, const OrthantState& state,
    std::vector<std::size_t>& free_candidates, std::vector<bool>& fixed) {
  const std::size_t n = x.size();
  CycleRecord rec;
  rec.initial_free_budget = free_candidates.size();
  const std::size_t pass_limit =
      cfg_.max_cycle_iters ? cfg_.max_cycle_iters : free_candidates.size() + 1;

  ReducedSystem sys;
  sys.hess_op = [this, &x](const DenseVector& v) { return obj_.hess_vec(x, v); };
  sys.rhs_neg = state.g;
  sys.ridge = cfg_.cg_ridge;

  DenseVector d(n, 0.0);
  bool have_warm = false;
  while (true) {
    if (rec.passes >= pass_limit)
      throw std::runtime_error("corrective_cycle: pass limit exceeded");
    sys.free_mask.assign(n, false);
    std::size_t free_dim = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (!fixed[i]) {
        sys.free_mask[i] = true;
        ++free_dim;
      }
    }
    std::size_t cg_cap = cfg_.cg_max_iters ? *cfg_.cg_max_iters : free_dim;
    CgOutcome out = solve_reduced(sys, cfg_.cg_rel_tol, std::max<std::size_t>(cg_cap, 1),
                                  have_warm ? &d : nullptr);
    d = std::move(out.d);
    ++rec.passes;
    rec.cg_iters_per_pass.push_back(out.iterations);
    rec.total_cg_iters += out.iterations;
    rec.final_cg_rel_residual = out.final_rel_residual;

    // demote free candidates whose step sign contradicts the prediction;
    // landing exactly at zero counts as a contradiction
    std::size_t demoted = 0;
    std::vector<std::size_t> survivors;
    survivors.reserve(free_candidates.size());
    for (std::size_t i : free_candidates) {
      // x_i = 0 for unsure variables, so sgn(x̂_i) = sgn(d_i)
      if (sign_of(x[i] + d[i]) != state.zeta[i]) {
        fixed[i] = true;
        d[i] = 0.0;  // warm start for the next, smaller system
        ++demoted;
      } else {
        survivors.push_back(i);
      }
    }
    rec.demoted_per_pass.push_back(demoted);
    free_candidates = std::move(survivors);
    if (demoted == 0) break;
    have_warm = true;
  }
  return {std::move(d), std::move(rec)};
}

std::tuple<DenseVector, double, std::size_t> ObaSolver::projected_line_search(
    const DenseVector& x, const DenseVector& d, const SignVector& zeta,
    const PiecewiseQuadModel& model) const {
  const double q_x = model.phi_at_base();
  double alpha = 1.0;
  std::size_t halvings = 0;
  while (true) {
    DenseVector trial = x;
    axpy(alpha, d, trial);
    trial = orthant_project(trial, zeta);
    if (model.eval_q(trial) <= q_x) return {std::move(trial), alpha, halvings};
    alpha *= 0.5;
    ++halvings;
    if (halvings > kMaxLineSearchTrials || alpha < kAlphaUnderflow)
      throw std::runtime_error(
          "projected_line_search: no model decrease (non-descent direction)");
  }
}

std::pair<DenseVector, double> ObaSolver::globalize(const DenseVector& x_hat,
                                                    const DenseVector& x_prox,
                                                    double gamma) const {
  DenseVector d_bar = x_hat;
  axpy(-1.0, x_prox, d_bar);
  double alpha_bar = 1.0;
  while (true) {
    DenseVector z = x_prox;
    axpy(alpha_bar, d_bar, z);
    double phi_z = obj_.value(z) + cfg_.mu * norm1(z);
    // at ᾱ = 0 the bound holds by the descent lemma; accept unconditionally
    if (phi_z <= gamma || alpha_bar == 0.0) return {std::move(z), alpha_bar};
    alpha_bar *= 0.5;
    if (alpha_bar < cfg_.eps) alpha_bar = 0.0;
  }
}

SolveReport ObaSolver::solve(const DenseVector& x0) {
  const std::size_t n = obj_.dim();
  if (x0.size() != n)
    throw std::invalid_argument("solve: x0 dimension mismatch");
  if (!all_finite(x0)) throw std::invalid_argument("solve: x0 not finite");

  const double mu = cfg_.mu;
  std::size_t tau = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::floor(cfg_.eta * static_cast<double>(n))));

  SolveReport report;
  DenseVector x = x0;
  auto t0 = std::chrono::steady_clock::now();

  std::size_t k = 0;
  for (; k < cfg_.max_outer_iters; ++k) {
    if (cfg_.time_cap_seconds && seconds_since(t0) > *cfg_.time_cap_seconds) {
      report.termination = Termination::kTimeCap;
      break;
    }
    double f_x = obj_.value(x);
    DenseVector grad = obj_.gradient(x);
    double phi = f_x + mu * norm1(x);
    if (!std::isfinite(phi) || !all_finite(grad))
      throw std::runtime_error("solve: non-finite objective or gradient at iteration " +
                               std::to_string(k));

    OrthantState state = identify_sets(x, grad, mu);
    double g_inf = norm_inf(state.g);
    if (g_inf <= cfg_.outer_tol) {
      report.termination = Termination::kTolerance;
      break;
    }

    auto [u_free, u_fixed] = select_free_set(state, tau);
    std::vector<bool> fixed(n, false);
    for (std::size_t i = 0; i < n; ++i)
      fixed[i] = state.label[i] == SetLabel::kActive;
    for (std::size_t i : u_fixed) fixed[i] = true;

    if (u_free.empty() && state.free_idx.empty())
      throw std::logic_error("solve: empty free set with nonzero subgradient");

    PiecewiseQuadModel model(obj_, x, grad, f_x, mu);

    auto [d, cyc] = corrective_cycle(x, state, u_free, fixed);
    if (cyc.passes == 1) tau = std::min(2 * tau, n);

    auto [x_hat, alpha, halvings] =
        projected_line_search(x, d, state.zeta, model);

    DenseVector x_prox = ista_step(x, grad, L_, mu);
    double gamma = surrogate_gamma(x, x_prox, f_x, grad, L_, mu);
    auto [x_next, alpha_bar] = globalize(x_hat, x_prox, gamma);

    IterationTrace t;
    t.iter = k;
    t.seconds = seconds_since(t0);
    t.phi = phi;
    t.g_inf = g_inf;
    t.nnz = count_nonzeros(x);
    t.cycle_passes = cyc.passes;
    t.cg_iters = cyc.total_cg_iters;
    t.cg_rel_residual = cyc.final_cg_rel_residual;
    t.alpha = alpha;
    t.alpha_bar = alpha_bar;
    t.gamma = gamma;
    t.ls_halvings = halvings;
    t.fallback = alpha_bar < 1.0;
    report.trace.push_back(t);
    if (t.fallback) ++report.fallback_count;
    report.max_ls_halvings = std::max(report.max_ls_halvings, halvings);
    report.max_cycle_passes = std::max(report.max_cycle_passes, cyc.passes);

    x = std::move(x_next);
  }
  if (k == cfg_.max_outer_iters) report.termination = Termination::kMaxIters;

  report.x = std::move(x);
  report.phi = obj_.value(report.x) + mu * norm1(report.x);
  report.g_inf =
      norm_inf(min_norm_subgradient(obj_.gradient(report.x), report.x, mu));
  report.solve_seconds = seconds_since(t0);
  return report;
}

SolveReport solve(const SmoothObjective& obj, const DenseVector& x0,
                  const SolverConfig& cfg) {
  ObaSolver solver(obj, cfg);
  return solver.solve(x0);
}

}  // namespace oba
