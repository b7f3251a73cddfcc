#pragma once

// Test-only oracles. Nothing here calls into the code paths it checks:
// entropy goes through an explicit density matrix and eigen-decomposition,
// integrals through Gauss-Legendre quadrature on the compactified radius.

#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <vector>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss.hpp>

#include "cp1ent/tensor_states.hpp"

namespace cp1ent::testing {

using cplx = std::complex<double>;

// P_v as a (k+1)^2 x (k+1)^2 matrix, first factor traced out by index loops.
inline Eigen::MatrixXcd brute_force_reduced_density(const Eigen::MatrixXcd& c) {
  const Eigen::Index n = c.rows();
  Eigen::VectorXcd v(n * n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) v(i * n + j) = c(i, j);
  const Eigen::MatrixXcd p = v * v.adjoint();
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index l = 0; l < n; ++l)
      for (Eigen::Index i = 0; i < n; ++i) rho(j, l) += p(i * n + j, i * n + l);
  return rho;
}

inline double brute_force_entropy(const Eigen::MatrixXcd& c) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(brute_force_reduced_density(c));
  double e = 0.0;
  for (double l : es.eigenvalues())
    if (l > 1e-14) e -= l * std::log(l);
  return e;
}

// int_0^1 f(u) du, 30-point Gauss-Legendre (exact for degree <= 59).
inline double gauss01(const std::function<double(double)>& f) {
  return boost::math::quadrature::gauss<double, 30>::integrate(f, 0.0, 1.0);
}

// int |z|^{2a} (1+|z|^2)^{-N} dmu by direct radial integration over [0, inf):
// dmu = (1/pi) r dr dtheta / (1+r^2)^2.
inline double radial_monomial_integral(int a, int n) {
  boost::math::quadrature::exp_sinh<double> integrator;
  auto f = [&](double r) {
    const double h = 1.0 + r * r;
    return 2.0 * r * std::pow(r * r / h, a) * std::pow(h, a - n - 2);
  };
  return integrator.integrate(f, 0.0, std::numeric_limits<double>::infinity());
}

// Product quadrature on CP1 in the variables u = r^2/(1+r^2), theta:
// dmu = du dtheta / (2 pi). Exact for u-polynomials up to degree 59 and
// trigonometric polynomials below n_theta.
struct SphereRule {
  std::vector<cplx> z;
  std::vector<double> weight;
};

inline SphereRule sphere_rule(int n_theta) {
  using std::numbers::pi;
  using Rule = boost::math::quadrature::gauss<double, 30>;
  SphereRule rule;
  const auto& abscissa = Rule::abscissa();
  const auto& weights = Rule::weights();
  std::vector<std::pair<double, double>> nodes;  // on [-1, 1], symmetric storage
  for (size_t i = 0; i < abscissa.size(); ++i) {
    nodes.emplace_back(abscissa[i], weights[i]);
    if (abscissa[i] != 0.0) nodes.emplace_back(-abscissa[i], weights[i]);
  }
  for (auto [x, w] : nodes) {
    const double u = 0.5 * (x + 1.0);
    const double r = std::sqrt(u / (1.0 - u));
    for (int m = 0; m < n_theta; ++m) {
      const double th = 2.0 * pi * m / n_theta;
      rule.z.push_back(std::polar(r, th));
      rule.weight.push_back(0.5 * w / n_theta);
    }
  }
  return rule;
}

inline Eigen::MatrixXcd random_unitary(int n, std::mt19937_64& gen) {
  std::normal_distribution<double> nd;
  Eigen::MatrixXcd g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = cplx(nd(gen), nd(gen));
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
  return qr.householderQ() * Eigen::MatrixXcd::Identity(n, n);
}

inline Eigen::MatrixXcd random_unit_matrix(int n, std::mt19937_64& gen) {
  std::normal_distribution<double> nd;
  Eigen::MatrixXcd g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = cplx(nd(gen), nd(gen));
  return g / g.norm();
}

inline Eigen::MatrixXcd random_product_matrix(int n, std::mt19937_64& gen) {
  std::normal_distribution<double> nd;
  Eigen::VectorXcd u(n), w(n);
  for (int i = 0; i < n; ++i) {
    u(i) = cplx(nd(gen), nd(gen));
    w(i) = cplx(nd(gen), nd(gen));
  }
  Eigen::MatrixXcd m = u * w.transpose();
  return m / m.norm();
}

}  // namespace cp1ent::testing
