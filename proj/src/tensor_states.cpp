#include "cp1ent/tensor_states.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/SVD>

#include "cp1ent/errors.hpp"

namespace cp1ent {

StateTensor::StateTensor(int k, CMatrix coeffs) : k_(k), coeffs_(std::move(coeffs)) {
  if (k < 1) throw PreconditionError("level k must be >= 1, got " + std::to_string(k));
  if (coeffs_.rows() != k + 1 || coeffs_.cols() != k + 1)
    throw PreconditionError("coefficient matrix must be (k+1)x(k+1)");
}

StateTensor StateTensor::zeros(int k) { return {k, CMatrix::Zero(k + 1, k + 1)}; }

StateTensor StateTensor::basis(int k, int i, int j) {
  if (i < 0 || i > k || j < 0 || j > k) throw IndexOutOfRange("basis index outside [0, k]");
  CMatrix m = CMatrix::Zero(k + 1, k + 1);
  m(i, j) = 1.0;
  return {k, std::move(m)};
}

StateTensor StateTensor::diagonal(int k, const Eigen::VectorXcd& a) {
  if (a.size() != k + 1) throw PreconditionError("diagonal needs k+1 entries");
  return {k, a.asDiagonal().toDenseMatrix()};
}

Eigen::VectorXcd StateTensor::flatten() const {
  const int n = dim();
  Eigen::VectorXcd v(n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) v(i * n + j) = coeffs_(i, j);
  return v;
}

StateTensor StateTensor::unflatten(int k, const Eigen::VectorXcd& v) {
  const int n = k + 1;
  if (v.size() != n * n) throw PreconditionError("flattened state must have (k+1)^2 entries");
  CMatrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = v(i * n + j);
  return {k, std::move(m)};
}

StateTensor StateTensor::normalized() const {
  const double n = coeffs_.norm();
  if (n < kZeroStateNorm) throw ZeroState();
  return {k_, coeffs_ / n};
}

bool StateTensor::is_diagonal(double tol) const {
  for (int i = 0; i < dim(); ++i)
    for (int j = 0; j < dim(); ++j)
      if (i != j && std::abs(coeffs_(i, j)) > tol) return false;
  return true;
}

StateTensor operator+(const StateTensor& a, const StateTensor& b) {
  if (a.k_ != b.k_) throw PreconditionError("level mismatch in state sum");
  return {a.k_, a.coeffs_ + b.coeffs_};
}

double frobenius_norm(const StateTensor& c) { return c.coeffs().norm(); }

SchmidtData schmidt(const StateTensor& c) {
  if (frobenius_norm(c) < kZeroStateNorm) throw ZeroState();
  Eigen::JacobiSVD<CMatrix> svd(c.coeffs());
  return {svd.singularValues()};  // Eigen returns them sorted descending
}

ReducedDensity partial_trace_first(const StateTensor& c) {
  if (frobenius_norm(c) < kZeroStateNorm) throw ZeroState();
  const CMatrix& m = c.coeffs();
  return {c.level(), m.transpose() * m.conjugate()};
}

double entropy_from_probabilities(const RVector& p) {
  double e = 0.0;
  for (double x : p)
    if (x >= kEntropyZeroFloor) e -= x * std::log(x);
  return std::max(e, 0.0);
}

double entanglement_entropy(const StateTensor& c) {
  const double norm = frobenius_norm(c);
  if (std::abs(norm - 1.0) > kNormalizationTol) throw NotNormalized(norm);
  const RVector a = schmidt(c).alphas;
  return entropy_from_probabilities(a.array().square().matrix());
}

int schmidt_rank(const StateTensor& c, double tol) {
  const RVector a = schmidt(c).alphas;
  const double cut = tol * a(0);
  return static_cast<int>(std::count_if(a.begin(), a.end(), [cut](double x) { return x > cut; }));
}

}  // namespace cp1ent
