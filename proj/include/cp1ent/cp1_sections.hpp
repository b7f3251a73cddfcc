#pragma once

// Orthonormal monomial basis e_j = sqrt((k+1) binom(k,j)) z^j of H0(CP1, L^k)
// and the Fubini-Study monomial integrals behind every inner product.
//
// Measure: dmu = (1/pi) dA / (1+|z|^2)^2, total volume 1. Pointwise metric on
// L^k in the affine frame z1 = 1: |s|^2 = |s(z)|^2 / (1+|z|^2)^k.

#include <complex>

#include "cp1ent/exact.hpp"
#include "cp1ent/tensor_states.hpp"

namespace cp1ent {

// Index j of e_j at level k; 0 <= j <= k.
struct BasisIndex {
  int k;
  int j;
  BasisIndex(int level, int index);
};

// Affine coordinate z = z0/z1 on the chart z1 != 0. The point [1:0] is not representable.
struct AffinePoint {
  cplx z;
};

// Above this level the normalization constants switch to log-gamma.
inline constexpr int kExactBinomialMaxLevel = 40;

// sqrt((k+1) binom(k,j)). Throws IndexOutOfRange.
double basis_norm_const(int k, int j);
double basis_norm_const_loggamma(int k, int j);
exact::SurdSum basis_norm_const_exact(int k, int j);

// int |z|^{2a} (1+|z|^2)^{-N} dmu = a!(N-a)!/(N+1)!. Throws DomainError if a > N.
exact::Rational monomial_integral(int a, int n);
double monomial_integral_value(int a, int n);

// sum_ij C_ij e_i(z) e_j(w) in the affine frame z1 = w1 = 1.
cplx evaluate_section(const StateTensor& c, AffinePoint z, AffinePoint w);

// <e_i, e_j> from the closed-form integrals (angular part forces i == j).
double section_inner_product(int k, int i, int j);

}  // namespace cp1ent
