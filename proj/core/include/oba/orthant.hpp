#pragma once

#include <cstdint>
#include <vector>

#include "oba/objective.hpp"
#include "oba/vec.hpp"

namespace oba {

/// Sign indicator in {-1, 0, +1} per coordinate.
using SignVector = std::vector<std::int8_t>;

enum class SetLabel : std::uint8_t {
  kActive,  // x_i = 0 and |∇_i f| ≤ μ; held at zero
  kFree,    // x_i ≠ 0
  kUnsure,  // x_i = 0 and |∇_i f| > μ
};

/// Immutable per-iteration snapshot of the set partition, the minimum-norm
/// subgradient g and the orthant indicator ζ.
struct OrthantState {
  DenseVector g;
  SignVector zeta;
  std::vector<SetLabel> label;
  std::vector<std::size_t> free_idx;    // indices with x_i != 0
  std::vector<std::size_t> unsure_idx;  // zero coordinates with |∇_i f| > μ
  std::size_t active_count = 0;
};

/// Minimum-norm subgradient of φ = f + μ‖·‖₁, per coordinate:
///   ∇_if + μ  if x_i > 0 or (x_i = 0 and ∇_if + μ < 0)
///   ∇_if − μ  if x_i < 0 or (x_i = 0 and ∇_if − μ > 0)
///   0         otherwise.
DenseVector min_norm_subgradient(const DenseVector& grad_f, const DenseVector& x,
                                 double mu);

/// Partition {1..n} into active / free / unsure and populate g and ζ.
/// The tie |∇_if| = μ at x_i = 0 goes to the active set.
OrthantState identify_sets(const DenseVector& x, const DenseVector& grad_f,
                           double mu);

/// Projection onto the orthant indicated by ζ: keeps x_i when
/// sgn(x_i) = sgn(ζ_i), zeroes it otherwise.
DenseVector orthant_project(const DenseVector& x, const SignVector& zeta);

/// Componentwise shrinkage max{|x_i|−α, 0}·sgn(x_i).
DenseVector soft_threshold(const DenseVector& x, double alpha);

/// Second-order model of φ around a fixed base point x:
///   q(z)  = f(x) + (z−x)ᵀ∇f(x) + ½(z−x)ᵀH(z−x) + μ‖z‖₁
///   q̄(z)  = same curvature with the ℓ1 term linearized as μζᵀz.
/// Each evaluation costs one Hessian-vector product.
class PiecewiseQuadModel {
 public:
  PiecewiseQuadModel(const SmoothObjective& obj, DenseVector base, double mu);

  // Reuses an already computed f(base) and ∇f(base).
  PiecewiseQuadModel(const SmoothObjective& obj, DenseVector base,
                     DenseVector grad_base, double f_base, double mu);

  double eval_q(const DenseVector& z) const;
  double eval_q_smooth(const DenseVector& z, const SignVector& zeta) const;
  double phi_at_base() const { return f_base_ + mu_ * norm1(base_); }

  const DenseVector& base() const { return base_; }
  const DenseVector& grad_at_base() const { return grad_base_; }
  double f_at_base() const { return f_base_; }
  double mu() const { return mu_; }

 private:
  double smooth_part(const DenseVector& z) const;

  const SmoothObjective& obj_;
  DenseVector base_;
  DenseVector grad_base_;
  double f_base_;
  double mu_;
};

}  // namespace oba
