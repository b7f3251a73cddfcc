#include <doctest.h>

#include <cmath>
#include <random>

#include "cp1ent/entropy_opt.hpp"
#include "cp1ent/errors.hpp"
#include "cp1ent/restriction.hpp"

using namespace cp1ent;

namespace {

RVector random_coords(Eigen::Index m, std::mt19937_64& gen) {
  std::normal_distribution<double> nd;
  RVector x(2 * m);
  for (auto& v : x) v = nd(gen);
  return x.normalized();
}

// Central differences of x -> E(embed(x / |x|)).
RVector fd_gradient(const std::vector<StateTensor>& basis, const RVector& x, double h) {
  auto f = [&](const RVector& y) { return entanglement_entropy(embed(basis, y.normalized())); };
  RVector g(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    RVector xp = x, xm = x;
    xp(i) += h;
    xm(i) -= h;
    g(i) = (f(xp) - f(xm)) / (2.0 * h);
  }
  return g;
}

std::vector<StateTensor> diagonal_basis(int k) {
  std::vector<StateTensor> out;
  for (int j = 0; j <= k; ++j) out.push_back(StateTensor::basis(k, j, j));
  return out;
}

}  // namespace

TEST_CASE("entropy_and_gradient on a single ray") {
  RVector x(2);
  x << 1.0, 0.0;
  const EntropyGradient eg = entropy_and_gradient({vector_c(1)}, x);
  CHECK(eg.value == doctest::Approx(std::log(2.0)).epsilon(1e-14));
  CHECK(eg.gradient.norm() < 1e-14);
  CHECK(eg.degenerate);
}

TEST_CASE("entropy_and_gradient on a decomposable point") {
  const auto basis = diagonal_basis(3);
  RVector x = RVector::Zero(8);
  x(2) = 1.0;
  CHECK(entropy_and_gradient(basis, x).value == 0.0);
  CHECK_THROWS_AS(entropy_and_gradient(basis, 2.0 * x), NotNormalized);
}

TEST_CASE("gradient matches central differences, k = 3 diagonal subspace") {
  std::mt19937_64 gen(5);
  const auto basis = diagonal_basis(3);
  for (int t = 0; t < 10; ++t) {
    const RVector x = random_coords(4, gen);
    const EntropyGradient eg = entropy_and_gradient(basis, x);
    CHECK(eg.value == doctest::Approx(entanglement_entropy(embed(basis, x))).epsilon(1e-14));
    CHECK((eg.gradient - fd_gradient(basis, x, 1e-5)).cwiseAbs().maxCoeff() <= 1e-6);
  }
}

TEST_CASE("property: gradient vs finite differences on kernel subspaces, k <= 8") {
  std::mt19937_64 gen(17);
  for (int k = 1; k <= 8; ++k) {
    const auto basis = k <= 3 ? kernel_basis(k) : diagonal_kernel_basis(k);
    for (int t = 0; t < 50; ++t) {
      const RVector x = random_coords(static_cast<Eigen::Index>(basis.size()), gen);
      const RVector g = entropy_and_gradient(basis, x).gradient;
      const RVector fd = fd_gradient(basis, x, 1e-5);
      CHECK((g - fd).norm() <= 1e-6 * std::max(1.0, fd.norm()));
    }
  }
}

TEST_CASE("gradient is tangent and phase-blind") {
  std::mt19937_64 gen(2);
  const auto basis = kernel_basis(2);
  const auto m = static_cast<Eigen::Index>(basis.size());
  const RVector x = random_coords(m, gen);
  const EntropyGradient eg = entropy_and_gradient(basis, x);
  CHECK(std::abs(eg.gradient.dot(x)) < 1e-12);
  // i * C in these coordinates is (-im, re).
  RVector ix(2 * m);
  ix << -x.tail(m), x.head(m);
  CHECK(std::abs(eg.gradient.dot(ix)) < 1e-10);
}

TEST_CASE("maximize on W_1, W_3, W_4") {
  OptProblem p;
  p.subspace = diagonal_kernel_basis(1);
  const OptResult r1 = maximize(p);
  CHECK(r1.best_value == doctest::Approx(std::log(2.0)).epsilon(1e-14));

  p.subspace = diagonal_kernel_basis(3);
  const OptResult r3 = maximize(p);
  CHECK(std::abs(r3.best_value - std::log(4.0)) <= 1e-6);
  CHECK(r3.converged);
  CHECK(r3.critical_residual < 1e-6);
  CHECK(restrict(r3.best_state).max_abs() < 1e-9);
  CHECK(std::abs(frobenius_norm(r3.best_state) - 1.0) < 1e-9);

  p.subspace = diagonal_kernel_basis(4);
  const OptResult r4 = maximize(p);
  CHECK(r4.best_value >= std::log(4.0) - 1e-6);
  CHECK(r4.best_value <= std::log(5.0) + 1e-9);
}

TEST_CASE("maximize is deterministic, phase-quotient invariant and bounded") {
  OptProblem p;
  p.subspace = diagonal_kernel_basis(5);
  p.seed = 42;
  p.trace = true;
  const OptResult a = maximize(p);
  const OptResult b = maximize(p);
  CHECK(a.best_value == b.best_value);
  CHECK(a.best_coords == b.best_coords);
  CHECK(a.trace.size() == 16);
  CHECK(a.best_value <= std::log(6.0) + 1e-9);

  // Rotating every basis vector by one global phase reparameterizes the sphere
  // without changing the objective landscape.
  OptProblem q = p;
  for (auto& s : q.subspace) s = std::polar(1.0, 0.77) * s;
  CHECK(std::abs(maximize(q).best_value - a.best_value) < 1e-9);
}

TEST_CASE("maximize flags non-convergence without throwing") {
  OptProblem p;
  p.subspace = diagonal_kernel_basis(6);
  p.max_iters = 1;
  p.restarts = 2;
  const OptResult r = maximize(p);
  CHECK_FALSE(r.converged);
  CHECK(r.iterations <= 1);
}

TEST_CASE("maximize preconditions") {
  OptProblem p;
  CHECK_THROWS_AS(maximize(p), PreconditionError);
  p.subspace = {vector_c(2), vector_c(2)};
  CHECK_THROWS_AS(maximize(p), NotOrthonormal);
}

TEST_CASE("critical_residual") {
  CHECK(critical_residual(max_entropy_vector(3)) <= 1e-12);
  CHECK(critical_residual(max_entropy_vector(4)) <= 1e-12);
  // c_2: |a|^2 = (1/2, 0, 1/2). With the zero entry kept the stationarity system fails by 1/2.
  CHECK(critical_residual(vector_c(2), ResidualSupport::All) == doctest::Approx(0.5));
  CHECK(critical_residual(vector_c(2), ResidualSupport::Nonzero) <= 1e-15);
  CHECK(critical_residual(vector_b(2)) == doctest::Approx(0.6));
  CHECK_THROWS_AS(critical_residual(StateTensor::basis(2, 0, 1)), PreconditionError);
}
