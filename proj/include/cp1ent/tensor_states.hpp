#pragma once

#include <complex>
#include <vector>

#include <Eigen/Core>

namespace cp1ent {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;

// Vector v = sum_ij C_ij e_i (x) e_j in H0(L^k) (x) H0(L^k), stored as its
// (k+1)x(k+1) coefficient matrix.
class StateTensor {
public:
  StateTensor() = default;
  // Throws PreconditionError if k < 1 or coeffs is not (k+1)x(k+1).
  StateTensor(int k, CMatrix coeffs);

  static StateTensor zeros(int k);
  // e_i (x) e_j
  static StateTensor basis(int k, int i, int j);
  // sum_j a_j e_j (x) e_j
  static StateTensor diagonal(int k, const Eigen::VectorXcd& a);

  int level() const { return k_; }
  int dim() const { return k_ + 1; }
  const CMatrix& coeffs() const { return coeffs_; }
  cplx operator()(int i, int j) const { return coeffs_(i, j); }

  // Row-major flattening: index (i,j) -> i*(k+1)+j, matching the lexicographic
  // basis order e_a (x) e_b used for operator matrices.
  Eigen::VectorXcd flatten() const;
  static StateTensor unflatten(int k, const Eigen::VectorXcd& v);

  StateTensor normalized() const;
  bool is_diagonal(double tol = 0.0) const;

  friend StateTensor operator*(cplx s, const StateTensor& c) { return {c.k_, s * c.coeffs_}; }
  friend StateTensor operator+(const StateTensor& a, const StateTensor& b);

private:
  int k_ = 1;
  CMatrix coeffs_ = CMatrix::Zero(2, 2);
};

struct SchmidtData {
  RVector alphas;  // descending, nonnegative
};

struct ReducedDensity {
  int level = 1;
  CMatrix matrix;
};

inline constexpr double kZeroStateNorm = 1e-14;
inline constexpr double kNormalizationTol = 1e-10;
// Squared Schmidt coefficients below this are treated as exact zeros (0 ln 0 = 0).
inline constexpr double kEntropyZeroFloor = 1e-14;

double frobenius_norm(const StateTensor& c);

// Singular values of the coefficient matrix, descending. Throws ZeroState.
SchmidtData schmidt(const StateTensor& c);

// Tr_2(A (x) B) = B Tr(A): the first tensor factor is traced out, giving
// rho_{jl} = sum_i C_ij conj(C_il). Throws ZeroState.
ReducedDensity partial_trace_first(const StateTensor& c);

// -sum alpha^2 ln alpha^2 over alpha^2 >= kEntropyZeroFloor.
// Throws NotNormalized when | ||C|| - 1 | > kNormalizationTol.
double entanglement_entropy(const StateTensor& c);

// Entropy from squared Schmidt coefficients (or reduced-density eigenvalues).
double entropy_from_probabilities(const RVector& p);

// Number of alphas above tol * alpha_max. Throws ZeroState.
int schmidt_rank(const StateTensor& c, double tol = 1e-8);

}  // namespace cp1ent
