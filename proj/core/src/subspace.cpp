#include "oba/subspace.hpp"

#include <cmath>
#include <stdexcept>

namespace oba {

namespace {

void mask_in_place(DenseVector& v, const std::vector<bool>& mask) {
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!mask[i]) v[i] = 0.0;
}

double masked_inf_norm(const DenseVector& v, const std::vector<bool>& mask) {
  double m = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (mask[i]) m = std::max(m, std::abs(v[i]));
  return m;
}

}  // namespace

CgOutcome solve_reduced(const ReducedSystem& sys, double rel_tol,
                        std::size_t max_iters, const DenseVector* warm_start) {
  if (!(rel_tol > 0.0 && rel_tol < 1.0))
    throw std::invalid_argument("solve_reduced: rel_tol must be in (0,1)");
  const std::size_t n = sys.rhs_neg.size();
  if (sys.free_mask.size() != n)
    throw std::invalid_argument("solve_reduced: mask/rhs size mismatch");

  // (H + δI) restricted to the free subspace
  auto apply = [&](const DenseVector& v) {
    DenseVector hv = sys.hess_op(v);
    mask_in_place(hv, sys.free_mask);
    for (std::size_t i = 0; i < n; ++i)
      if (sys.free_mask[i]) hv[i] += sys.ridge * v[i];
    return hv;
  };

  CgOutcome out;
  out.d.assign(n, 0.0);

  DenseVector g = sys.rhs_neg;
  mask_in_place(g, sys.free_mask);
  const double g_inf = norm_inf(g);
  if (g_inf == 0.0) {
    out.converged = true;
    return out;
  }

  if (warm_start) {
    out.d = *warm_start;
    mask_in_place(out.d, sys.free_mask);
  }

  // true residual of (H+δI)d = −g
  auto true_residual = [&](const DenseVector& d) {
    DenseVector r = apply(d);
    for (std::size_t i = 0; i < n; ++i) r[i] = -g[i] - r[i];
    return r;
  };

  DenseVector r = true_residual(out.d);
  DenseVector p = r;
  double rr = dot(r, r);

  for (std::size_t it = 0; it < max_iters; ++it) {
    out.final_rel_residual = masked_inf_norm(r, sys.free_mask) / g_inf;
    if (out.final_rel_residual <= rel_tol) {
      out.converged = true;
      return out;
    }
    DenseVector hp = apply(p);
    double pap = dot(p, hp);
    if (!std::isfinite(pap) || pap <= 0.0) {
      // cannot happen for convex f; signals a non-PSD user quadratic
      out.breakdown = true;
      return out;
    }
    double alpha = rr / pap;
    axpy(alpha, p, out.d);
    ++out.iterations;

    r = true_residual(out.d);
    if (!all_finite(r) || !all_finite(out.d)) {
      out.breakdown = true;
      axpy(-alpha, p, out.d);  // roll back to the last finite iterate
      return out;
    }
    double rr_new = dot(r, r);
    double beta = rr_new / rr;
    rr = rr_new;
    for (std::size_t i = 0; i < n; ++i) p[i] = r[i] + beta * p[i];
  }
  out.final_rel_residual = masked_inf_norm(r, sys.free_mask) / g_inf;
  out.converged = out.final_rel_residual <= rel_tol;
  return out;
}

}  // namespace oba
