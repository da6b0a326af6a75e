#include "oba/objective.hpp"

#include <cmath>
#include <stdexcept>

#include "oba/rng.hpp"

namespace oba {

namespace {

constexpr double kLipschitzSafety = 1.02;
constexpr std::size_t kPowerIters = 100;
constexpr std::uint64_t kPowerSeed = 0x9e3779b97f4a7c15ull;

// log(1 + exp(t)) without overflow
double log1p_exp(double t) {
  if (t > 0.0) return t + std::log1p(std::exp(-t));
  return std::log1p(std::exp(t));
}

// sigma(z) = 1 / (1 + exp(-z))
double sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  double e = std::exp(z);
  return e / (1.0 + e);
}

}  // namespace

double SmoothObjective::lipschitz_L() const {
  if (!cached_L_) cached_L_ = compute_lipschitz();
  return *cached_L_;
}

// ---------------------------------------------------------------------------
// LogisticLoss

LogisticLoss::LogisticLoss(SparseMatrix a, std::vector<double> labels,
                           double ridge)
    : a_(std::move(a)), y_(std::move(labels)), ridge_(ridge) {
  if (y_.size() != a_.rows())
    throw std::invalid_argument("LogisticLoss: label count != row count");
  for (double y : y_)
    if (y != 1.0 && y != -1.0)
      throw std::invalid_argument("LogisticLoss: labels must be -1 or +1");
  if (ridge_ < 0.0) throw std::invalid_argument("LogisticLoss: ridge < 0");
}

double LogisticLoss::value(const DenseVector& x) const {
  check_dim(x, "LogisticLoss::value");
  DenseVector m = a_.matvec(x);
  double s = 0.0;
  for (std::size_t i = 0; i < m.size(); ++i) s += log1p_exp(-y_[i] * m[i]);
  double n = static_cast<double>(a_.rows());
  return s / n + 0.5 * ridge_ * norm2_sq(x);
}

DenseVector LogisticLoss::gradient(const DenseVector& x) const {
  check_dim(x, "LogisticLoss::gradient");
  DenseVector m = a_.matvec(x);
  double n = static_cast<double>(a_.rows());
  for (std::size_t i = 0; i < m.size(); ++i)
    m[i] = -y_[i] * sigmoid(-y_[i] * m[i]) / n;
  DenseVector g = a_.matvec_transpose(m);
  if (ridge_ != 0.0) axpy(ridge_, x, g);
  return g;
}

DenseVector LogisticLoss::hess_vec(const DenseVector& x,
                                   const DenseVector& v) const {
  check_dim(x, "LogisticLoss::hess_vec");
  check_dim(v, "LogisticLoss::hess_vec");
  DenseVector m = a_.matvec(x);
  DenseVector av = a_.matvec(v);
  double n = static_cast<double>(a_.rows());
  for (std::size_t i = 0; i < m.size(); ++i) {
    double s = sigmoid(m[i]);  // D_ii = sigma(1-sigma), symmetric in the label
    m[i] = s * (1.0 - s) * av[i] / n;
  }
  DenseVector h = a_.matvec_transpose(m);
  if (ridge_ != 0.0) axpy(ridge_, v, h);
  return h;
}

double LogisticLoss::compute_lipschitz() const {
  double norm_sq = estimate_spectral_norm_sq(a_, kPowerIters, kPowerSeed);
  double n = static_cast<double>(a_.rows());
  return kLipschitzSafety * norm_sq / (4.0 * n) + ridge_;
}

// ---------------------------------------------------------------------------
// LeastSquaresLoss

LeastSquaresLoss::LeastSquaresLoss(SparseMatrix a, DenseVector b, double ridge)
    : a_(std::move(a)), b_(std::move(b)), ridge_(ridge) {
  if (b_.size() != a_.rows())
    throw std::invalid_argument("LeastSquaresLoss: rhs length != row count");
  if (ridge_ < 0.0) throw std::invalid_argument("LeastSquaresLoss: ridge < 0");
}

double LeastSquaresLoss::value(const DenseVector& x) const {
  check_dim(x, "LeastSquaresLoss::value");
  DenseVector r = a_.matvec(x);
  axpy(-1.0, b_, r);
  double n = static_cast<double>(a_.rows());
  return 0.5 * norm2_sq(r) / n + 0.5 * ridge_ * norm2_sq(x);
}

DenseVector LeastSquaresLoss::gradient(const DenseVector& x) const {
  check_dim(x, "LeastSquaresLoss::gradient");
  DenseVector r = a_.matvec(x);
  axpy(-1.0, b_, r);
  scale(r, 1.0 / static_cast<double>(a_.rows()));
  DenseVector g = a_.matvec_transpose(r);
  if (ridge_ != 0.0) axpy(ridge_, x, g);
  return g;
}

DenseVector LeastSquaresLoss::hess_vec(const DenseVector& x,
                                       const DenseVector& v) const {
  check_dim(x, "LeastSquaresLoss::hess_vec");
  check_dim(v, "LeastSquaresLoss::hess_vec");
  DenseVector av = a_.matvec(v);
  scale(av, 1.0 / static_cast<double>(a_.rows()));
  DenseVector h = a_.matvec_transpose(av);
  if (ridge_ != 0.0) axpy(ridge_, v, h);
  return h;
}

double LeastSquaresLoss::compute_lipschitz() const {
  double norm_sq = estimate_spectral_norm_sq(a_, kPowerIters, kPowerSeed);
  return kLipschitzSafety * norm_sq / static_cast<double>(a_.rows()) + ridge_;
}

// ---------------------------------------------------------------------------
// QuadraticLoss

QuadraticLoss::QuadraticLoss(SparseMatrix h, DenseVector c, double ridge)
    : h_(std::move(h)), c_(std::move(c)), ridge_(ridge) {
  if (h_.rows() != h_.cols())
    throw std::invalid_argument("QuadraticLoss: H must be square");
  if (c_.size() != h_.cols())
    throw std::invalid_argument("QuadraticLoss: c length != dimension");
  if (ridge_ < 0.0) throw std::invalid_argument("QuadraticLoss: ridge < 0");
  // adjoint spot-check <Hu, v> = <u, Hv>
  Uniform01 rng(12345);
  DenseVector u(h_.cols()), v(h_.cols());
  for (std::size_t i = 0; i < u.size(); ++i) {
    u[i] = rng.next_signed();
    v[i] = rng.next_signed();
  }
  double lhs = dot(h_.matvec(u), v);
  double rhs = dot(u, h_.matvec(v));
  double ref = std::max({std::abs(lhs), std::abs(rhs), 1.0});
  if (std::abs(lhs - rhs) > 1e-10 * ref)
    throw std::invalid_argument("QuadraticLoss: H is not symmetric");
}

double QuadraticLoss::value(const DenseVector& x) const {
  check_dim(x, "QuadraticLoss::value");
  return 0.5 * dot(x, h_.matvec(x)) + dot(c_, x) + 0.5 * ridge_ * norm2_sq(x);
}

DenseVector QuadraticLoss::gradient(const DenseVector& x) const {
  check_dim(x, "QuadraticLoss::gradient");
  DenseVector g = h_.matvec(x);
  axpy(1.0, c_, g);
  if (ridge_ != 0.0) axpy(ridge_, x, g);
  return g;
}

DenseVector QuadraticLoss::hess_vec(const DenseVector& x,
                                    const DenseVector& v) const {
  check_dim(x, "QuadraticLoss::hess_vec");
  check_dim(v, "QuadraticLoss::hess_vec");
  DenseVector h = h_.matvec(v);
  if (ridge_ != 0.0) axpy(ridge_, v, h);
  return h;
}

double QuadraticLoss::compute_lipschitz() const {
  // ‖H‖₂ = sqrt(‖H‖₂²) for symmetric H
  double norm_sq = estimate_spectral_norm_sq(h_, kPowerIters, kPowerSeed);
  return kLipschitzSafety * std::sqrt(norm_sq) + ridge_;
}

}  // namespace oba
