#include <cmath>

#include "doctest.h"

#include "oba/ista.hpp"
#include "oba/oracle.hpp"
#include "oba/orthant.hpp"
#include "oba/rng.hpp"

using namespace oba;

namespace {

QuadraticLoss diag_quadratic(DenseVector h, DenseVector c) {
  std::size_t n = h.size();
  std::vector<double> dense(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) dense[i * n + i] = h[i];
  return QuadraticLoss(SparseMatrix::from_dense(n, n, dense), std::move(c));
}

}  // namespace

TEST_CASE("oracle solves a 1-d problem by hand") {
  // f = 1/2 x^2 - 3x, mu = 1: minimizer of |x| penalty is x = 2, phi = -2 + 2 - 6 + ...
  // phi(2) = 2 - 6 + 2 = -2
  auto q = diag_quadratic({1.0}, {-3.0});
  auto res = brute_force_oracle(q, 1.0);
  CHECK(res.x_star[0] == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(res.phi_star == doctest::Approx(-2.0).epsilon(1e-10));
  CHECK(res.pattern == SignVector{1});
  CHECK(res.g_inf < 1e-8);
}

TEST_CASE("oracle finds the zero solution when mu dominates") {
  auto q = diag_quadratic({1.0, 2.0}, {0.5, -0.3});
  auto res = brute_force_oracle(q, 1.0);  // |c_i| < mu everywhere
  CHECK(norm_inf(res.x_star) == 0.0);
  CHECK(res.phi_star == doctest::Approx(0.0));
  CHECK(res.pattern == SignVector{0, 0});
}

TEST_CASE("oracle matches the separable closed form") {
  DenseVector h{2.0, 1.0, 4.0};
  DenseVector c{-3.0, 0.2, 1.5};
  const double mu = 0.5;
  auto q = diag_quadratic(h, c);
  auto res = brute_force_oracle(q, mu);
  for (std::size_t i = 0; i < 3; ++i) {
    double z = std::max(std::abs(-c[i]) - mu, 0.0) * sign_of(-c[i]);
    CHECK(res.x_star[i] == doctest::Approx(z / h[i]).epsilon(1e-9));
  }
}

TEST_CASE("oracle certificate holds on random coupled problems") {
  Uniform01 rng(43);
  for (int rep = 0; rep < 5; ++rep) {
    std::size_t n = 2 + static_cast<std::size_t>(rng.next() * 3);
    std::vector<double> b(n * n);
    for (double& v : b) v = rng.next_signed();
    std::vector<double> hd(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        double s = i == j ? 0.2 : 0.0;
        for (std::size_t k = 0; k < n; ++k) s += b[k * n + i] * b[k * n + j];
        hd[i * n + j] = s;
      }
    DenseVector c(n);
    for (double& v : c) v = 2.0 * rng.next_signed();
    QuadraticLoss q(SparseMatrix::from_dense(n, n, hd), c);
    const double mu = 0.2 + rng.next();
    auto res = brute_force_oracle(q, mu);
    CHECK(res.g_inf < 1e-7);
    // the returned point really lies on the reported face
    for (std::size_t i = 0; i < n; ++i) {
      if (res.pattern[i] == 0)
        CHECK(res.x_star[i] == 0.0);
      else
        CHECK(res.x_star[i] * res.pattern[i] >= 0.0);
    }
    // no random probe beats it
    double phi_star = res.phi_star;
    for (int probe = 0; probe < 200; ++probe) {
      DenseVector z(n);
      for (double& v : z) v = 3.0 * rng.next_signed();
      CHECK(q.value(z) + mu * norm1(z) >= phi_star - 1e-10);
    }
  }
}

TEST_CASE("oracle also certifies a logistic loss") {
  Uniform01 rng(47);
  std::vector<double> av(6 * 3);
  for (double& v : av) v = rng.next_signed();
  auto a = SparseMatrix::from_dense(6, 3, av);
  std::vector<double> y(6);
  for (double& v : y) v = rng.next() > 0.5 ? 1.0 : -1.0;
  LogisticLoss loss(a, y, 0.1);
  auto res = brute_force_oracle(loss, 0.05);
  CHECK(res.g_inf < 1e-7);
  for (int probe = 0; probe < 200; ++probe) {
    DenseVector z(3);
    for (double& v : z) v = 3.0 * rng.next_signed();
    CHECK(loss.value(z) + 0.05 * norm1(z) >= res.phi_star - 1e-10);
  }
}

TEST_CASE("oracle refuses large dimensions") {
  QuadraticLoss q(SparseMatrix::identity(13), DenseVector(13, 0.0));
  CHECK_THROWS_AS(brute_force_oracle(q, 0.5), std::invalid_argument);
  CHECK_THROWS(brute_force_oracle(q, 0.5, 12));
}

TEST_CASE("ista solves the 1-d hand problem") {
  auto q = diag_quadratic({1.0}, {-3.0});
  IstaConfig cfg;
  cfg.mu = 1.0;
  cfg.tol = 1e-10;
  auto rep = ista_solve(q, DenseVector{0.0}, cfg);
  CHECK(rep.termination == Termination::kTolerance);
  CHECK(rep.x[0] == doctest::Approx(2.0).epsilon(1e-8));
}

TEST_CASE("ista respects max_iters and reports it") {
  auto q = diag_quadratic({1.0, 1.0}, {-5.0, 5.0});
  IstaConfig cfg;
  cfg.mu = 0.5;
  cfg.tol = 1e-16;
  cfg.max_iters = 4;
  auto rep = ista_solve(q, DenseVector(2, 0.0), cfg);
  CHECK(rep.termination == Termination::kMaxIters);
  CHECK(rep.trace.size() == 4);
}

TEST_CASE("ista produces exact zeros") {
  auto q = diag_quadratic({1.0, 1.0}, {-3.0, 0.1});
  IstaConfig cfg;
  cfg.mu = 0.5;
  cfg.tol = 1e-10;
  auto rep = ista_solve(q, DenseVector(2, 0.0), cfg);
  CHECK(rep.x[1] == 0.0);
}
