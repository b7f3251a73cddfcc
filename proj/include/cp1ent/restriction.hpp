#pragma once

// Restriction R_k to the antidiagonal circle  Lambda = {(e^{it}, e^{-it})}.
//
// On Lambda, e_i(z) e_j(w) = (k+1) sqrt(binom(k,i) binom(k,j)) e^{i(i-j)t}, so a
// state restricts to a trigonometric polynomial whose mode d collects the
// entries with i - j = d. ker R_k is therefore one linear condition per mode,
// each on a disjoint set of coefficients.

#include <vector>

#include <Eigen/Core>

#include "cp1ent/exact.hpp"
#include "cp1ent/tensor_states.hpp"

namespace cp1ent {

struct LambdaRestriction {
  int level = 1;
  Eigen::VectorXcd fourier;  // entry d + k holds the coefficient of e^{idt}, d in [-k, k]

  cplx mode(int d) const { return fourier(d + level); }
  double max_abs() const { return fourier.cwiseAbs().maxCoeff(); }
};

struct ConstraintSystem {
  int level = 1;
  // Row d + k, column i*(k+1) + j: (k+1) sqrt(binom(k,i) binom(k,j)) when i - j = d.
  Eigen::MatrixXd matrix;
};

// Unnormalized state with exact rational coefficients; a StateTensor is its
// normalization. Kernel membership does not depend on the scale.
struct ExactState {
  int level = 1;
  std::vector<exact::ComplexRational> coeffs;  // row-major (k+1)x(k+1)

  static ExactState zeros(int k);
  exact::ComplexRational& at(int i, int j) { return coeffs[static_cast<size_t>(i * (level + 1) + j)]; }
  const exact::ComplexRational& at(int i, int j) const {
    return coeffs[static_cast<size_t>(i * (level + 1) + j)];
  }
  StateTensor to_state() const;  // normalized; throws ZeroState
};

inline constexpr double kRankTolerance = 1e-10;

LambdaRestriction restrict(const StateTensor& c);
// Exact Fourier coefficients of the restriction, entry d + k.
std::vector<exact::ExactComplex> restrict_exact(const ExactState& c);
bool in_kernel_exact(const ExactState& c);

ConstraintSystem constraint_system(int k);

// Orthonormal basis of ker R_k (k^2 elements) from a column-pivoted QR of the
// transposed constraint matrix with relative rank tolerance `tol`. Each element
// is real with its largest-magnitude entry positive.
std::vector<StateTensor> kernel_basis(int k, double tol = kRankTolerance);

// Same space built mode by mode: in each mode block the kernel is the
// orthogonal complement of the block's constraint row.
std::vector<StateTensor> kernel_basis_modewise(int k);

// Orthogonal projector onto ker R_k in the flattened basis:
// I - sum_d w_d w_d^T / |w_d|^2 with w_d the mode-d constraint row.
Eigen::MatrixXd kernel_projector(int k);
// The same projector with exact entries.
std::vector<std::vector<exact::SurdSum>> kernel_projector_exact(int k);

// Numerical rank of the constraint system at relative tolerance `tol`.
int constraint_rank(int k, double tol = kRankTolerance);

// W_k = ker R_k  intersected with span{e_j (x) e_j}: orthonormal, k elements.
std::vector<StateTensor> diagonal_kernel_basis(int k, double tol = kRankTolerance);
// (k+1) - rank of the diagonal columns of the constraint system.
int diagonal_kernel_dimension(int k, double tol = kRankTolerance);

// b_k = (e_1 (x) e_1 - k e_0 (x) e_0) / sqrt(1+k^2)
StateTensor vector_b(int k);
ExactState vector_b_direction(int k);
// Closed form -p ln p - (1-p) ln(1-p) with p = 1/(1+k^2).
double vector_b_entropy_formula(int k);

// c_k = (e_0 (x) e_0 - e_k (x) e_k) / sqrt(2)
StateTensor vector_c(int k);
ExactState vector_c_direction(int k);

// Antisymmetric diagonal vector a_j = -a_{k-j} with equal moduli; the middle
// coefficient is zero for even k. Entropy ln(k+1) for odd k, ln k for even k.
StateTensor max_entropy_vector(int k);
ExactState max_entropy_direction(int k);

}  // namespace cp1ent
