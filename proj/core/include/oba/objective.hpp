#pragma once

#include <memory>
#include <optional>

#include "oba/sparse.hpp"
#include "oba/vec.hpp"

namespace oba {

/// Smooth convex loss f with value, gradient and Hessian-vector product.
/// Objects are immutable after construction and safe to share across
/// threads; evaluations are pure functions of their arguments.
class SmoothObjective {
 public:
  virtual ~SmoothObjective() = default;

  virtual std::size_t dim() const = 0;
  virtual double value(const DenseVector& x) const = 0;
  virtual DenseVector gradient(const DenseVector& x) const = 0;
  virtual DenseVector hess_vec(const DenseVector& x, const DenseVector& v) const = 0;

  /// Upper bound on ‖∇²f‖₂ over ℝⁿ. Estimated once (power iteration with a
  /// 1.02 safety factor) and cached.
  double lipschitz_L() const;

 protected:
  virtual double compute_lipschitz() const = 0;

  void check_dim(const DenseVector& x, const char* where) const {
    if (x.size() != dim())
      throw std::invalid_argument(std::string(where) + ": dimension mismatch");
  }

 private:
  mutable std::optional<double> cached_L_;
};

/// Averaged logistic loss
///   f(x) = (1/N) Σ_i log(1 + exp(−y_i aᵢᵀx)) + (ridge/2)‖x‖²
/// with labels y_i ∈ {−1,+1}. Averaging keeps L independent of the sample
/// count, so μ is interpreted on the same scale for every dataset size.
class LogisticLoss : public SmoothObjective {
 public:
  LogisticLoss(SparseMatrix a, std::vector<double> labels, double ridge = 0.0);

  std::size_t dim() const override { return a_.cols(); }
  double value(const DenseVector& x) const override;
  DenseVector gradient(const DenseVector& x) const override;
  DenseVector hess_vec(const DenseVector& x, const DenseVector& v) const override;

  const SparseMatrix& data() const { return a_; }
  double ridge() const { return ridge_; }

 protected:
  double compute_lipschitz() const override;

 private:
  SparseMatrix a_;
  std::vector<double> y_;
  double ridge_;
};

/// f(x) = (1/2N)‖Ax − b‖² + (ridge/2)‖x‖²
class LeastSquaresLoss : public SmoothObjective {
 public:
  LeastSquaresLoss(SparseMatrix a, DenseVector b, double ridge = 0.0);

  std::size_t dim() const override { return a_.cols(); }
  double value(const DenseVector& x) const override;
  DenseVector gradient(const DenseVector& x) const override;
  DenseVector hess_vec(const DenseVector& x, const DenseVector& v) const override;

  const SparseMatrix& data() const { return a_; }

 protected:
  double compute_lipschitz() const override;

 private:
  SparseMatrix a_;
  DenseVector b_;
  double ridge_;
};

/// f(x) = ½xᵀHx + cᵀx + (ridge/2)‖x‖² for symmetric PSD H.
/// Symmetry is spot-checked on construction via the adjoint identity.
class QuadraticLoss : public SmoothObjective {
 public:
  QuadraticLoss(SparseMatrix h, DenseVector c, double ridge = 0.0);

  std::size_t dim() const override { return h_.cols(); }
  double value(const DenseVector& x) const override;
  DenseVector gradient(const DenseVector& x) const override;
  DenseVector hess_vec(const DenseVector& x, const DenseVector& v) const override;

 protected:
  double compute_lipschitz() const override;

 private:
  SparseMatrix h_;
  DenseVector c_;
  double ridge_;
};

}  // namespace oba
