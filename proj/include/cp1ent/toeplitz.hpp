#pragma once

// Berezin-Toeplitz operators T_F^{(k)} : s -> Pi_k(F s) on H0(L^k) (x) H0(L^k)
// for symbols that are finite sums of rational monomials in the affine chart.
// Matrix elements are <F (e_a (x) e_b), e_c (x) e_d> computed from closed-form
// Fubini-Study integrals, so Pi_k is never discretized.

#include <vector>

#include "cp1ent/cp1_sections.hpp"
#include "cp1ent/exact.hpp"
#include "cp1ent/restriction.hpp"
#include "cp1ent/tensor_states.hpp"

namespace cp1ent {

// coef * z^pz zbar^qz w^pw wbar^qw / ((1+|z|^2)^nz (1+|w|^2)^nw)
struct SymbolTerm {
  exact::ComplexRational coef;
  int pz = 0, qz = 0, pw = 0, qw = 0;
  int nz = 0, nw = 0;

  SymbolTerm conjugate() const { return {coef.conj(), qz, pz, qw, pw, nz, nw}; }
  friend bool operator==(const SymbolTerm&, const SymbolTerm&) = default;
};

struct SymbolExpr {
  std::vector<SymbolTerm> terms;
  exact::ComplexRational offset;

  // Syntactic check: the term multiset is closed under conjugation and the offset is real.
  bool is_real_valued() const;
};

// (9/2) (z0 w0 - z1 w1)(conj) / ((|z0|^2+|z1|^2)(|w0|^2+|w1|^2)) - 2, written in the
// chart z1 = w1 = 1 as (9/2){|zw|^2 - zw - zbar wbar + 1} / ((1+|z|^2)(1+|w|^2)) - 2.
SymbolExpr symbol_of_theorem2e();

cplx evaluate_symbol(const SymbolExpr& f, AffinePoint z, AffinePoint w);

struct ToeplitzMatrix {
  int level = 1;
  // Row (c,d) -> c*(k+1)+d, column (a,b) -> a*(k+1)+b.
  CMatrix entries;

  int dim() const { return static_cast<int>(entries.rows()); }
};

using ExactMatrix = std::vector<std::vector<exact::ExactComplex>>;

// Throws DomainError when a required integral I(a', N') has a' > N'.
ToeplitzMatrix toeplitz_matrix(const SymbolExpr& f, int k);
ExactMatrix toeplitz_matrix_exact(const SymbolExpr& f, int k);

// sum_v v v^* over an orthonormal list (flattened). Throws NotOrthonormal when
// the Gram matrix deviates from I by more than tol.
ToeplitzMatrix projection_matrix(int k, const std::vector<StateTensor>& basis, double tol = 1e-10);

// Exact projector onto the span of rational directions, by rational Gram-Schmidt
// (no normalization, so every entry stays in Q(i)).
ExactMatrix projection_matrix_exact(int k, const std::vector<ExactState>& directions);

ExactMatrix to_exact(const std::vector<std::vector<exact::SurdSum>>& m);
CMatrix to_complex(const ExactMatrix& m);
bool exact_equal(const ExactMatrix& a, const ExactMatrix& b);

double max_abs_diff(const CMatrix& a, const CMatrix& b);

}  // namespace cp1ent
