#include "oba/orthant.hpp"

#include <cmath>
#include <stdexcept>

namespace oba {

DenseVector min_norm_subgradient(const DenseVector& grad_f, const DenseVector& x,
                                 double mu) {
  check_same_size(grad_f, x, "min_norm_subgradient");
  if (mu <= 0.0) throw std::invalid_argument("min_norm_subgradient: mu must be > 0");
  DenseVector g(x.size(), 0.0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    double up = grad_f[i] + mu;
    double dn = grad_f[i] - mu;
    if (x[i] > 0.0 || (x[i] == 0.0 && up < 0.0))
      g[i] = up;
    else if (x[i] < 0.0 || (x[i] == 0.0 && dn > 0.0))
      g[i] = dn;
  }
  return g;
}

OrthantState identify_sets(const DenseVector& x, const DenseVector& grad_f,
                           double mu) {
  check_same_size(grad_f, x, "identify_sets");
  if (mu <= 0.0) throw std::invalid_argument("identify_sets: mu must be > 0");
  OrthantState st;
  const std::size_t n = x.size();
  st.g = min_norm_subgradient(grad_f, x, mu);
  st.zeta.resize(n);
  st.label.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (x[i] != 0.0) {
      st.label[i] = SetLabel::kFree;
      st.free_idx.push_back(i);
      st.zeta[i] = static_cast<std::int8_t>(sign_of(x[i]));
    } else if (std::abs(grad_f[i]) <= mu) {
      st.label[i] = SetLabel::kActive;
      ++st.active_count;
      st.zeta[i] = 0;  // g_i = 0 here
    } else {
      st.label[i] = SetLabel::kUnsure;
      st.unsure_idx.push_back(i);
      st.zeta[i] = static_cast<std::int8_t>(sign_of(-st.g[i]));
    }
  }
  return st;
}

DenseVector orthant_project(const DenseVector& x, const SignVector& zeta) {
  if (x.size() != zeta.size())
    throw std::invalid_argument("orthant_project: dimension mismatch");
  DenseVector out(x.size(), 0.0);
  for (std::size_t i = 0; i < x.size(); ++i)
    if (sign_of(x[i]) == zeta[i]) out[i] = x[i];
  return out;
}

DenseVector soft_threshold(const DenseVector& x, double alpha) {
  if (alpha < 0.0) throw std::invalid_argument("soft_threshold: alpha must be >= 0");
  DenseVector out(x.size(), 0.0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    double m = std::abs(x[i]) - alpha;
    if (m > 0.0) out[i] = m * sign_of(x[i]);
  }
  return out;
}

PiecewiseQuadModel::PiecewiseQuadModel(const SmoothObjective& obj,
                                       DenseVector base, double mu)
    : obj_(obj),
      base_(std::move(base)),
      grad_base_(obj.gradient(base_)),
      f_base_(obj.value(base_)),
      mu_(mu) {}

PiecewiseQuadModel::PiecewiseQuadModel(const SmoothObjective& obj,
                                       DenseVector base, DenseVector grad_base,
                                       double f_base, double mu)
    : obj_(obj),
      base_(std::move(base)),
      grad_base_(std::move(grad_base)),
      f_base_(f_base),
      mu_(mu) {}

double PiecewiseQuadModel::smooth_part(const DenseVector& z) const {
  DenseVector s = z;
  axpy(-1.0, base_, s);  // displacement
  DenseVector hs = obj_.hess_vec(base_, s);
  return f_base_ + dot(s, grad_base_) + 0.5 * dot(s, hs);
}

double PiecewiseQuadModel::eval_q(const DenseVector& z) const {
  return smooth_part(z) + mu_ * norm1(z);
}

double PiecewiseQuadModel::eval_q_smooth(const DenseVector& z,
                                         const SignVector& zeta) const {
  double lin = 0.0;
  for (std::size_t i = 0; i < z.size(); ++i) lin += zeta[i] * z[i];
  return smooth_part(z) + mu_ * lin;
}

}  // namespace oba
