#include "cp1ent/toeplitz.hpp"

#include <cmath>
#include <map>
#include <string>
#include <tuple>

#include "cp1ent/errors.hpp"

namespace cp1ent {

namespace {

using Exponents = std::tuple<int, int, int, int, int, int>;

Exponents exponents(const SymbolTerm& t) { return {t.pz, t.qz, t.pw, t.qw, t.nz, t.nw}; }

void check_term(const SymbolTerm& t) {
  if (t.pz < 0 || t.qz < 0 || t.pw < 0 || t.qw < 0 || t.nz < 0 || t.nw < 0)
    throw DomainError("symbol exponents must be nonnegative");
}

void check_integrable(int a, int n) {
  if (a > n)
    throw DomainError("symbol grows too fast for this level: needs I(" + std::to_string(a) + ", " +
                      std::to_string(n) + ")");
}

// Visits every nonzero (row, col, term) triple allowed by the selection rule
// a + pz = c + qz, b + pw = d + qw.
template <typename Visit>
void for_each_coupling(const SymbolExpr& f, int k, Visit&& visit) {
  const int n = k + 1;
  for (const SymbolTerm& t : f.terms) {
    check_term(t);
    for (int a = 0; a < n; ++a) {
      const int c = a + t.pz - t.qz;
      if (c < 0 || c >= n) continue;
      for (int b = 0; b < n; ++b) {
        const int d = b + t.pw - t.qw;
        if (d < 0 || d >= n) continue;
        check_integrable(a + t.pz, k + t.nz);
        check_integrable(b + t.pw, k + t.nw);
        visit(t, c * n + d, a * n + b, a, b, c, d);
      }
    }
  }
}

exact::ComplexRational inner(const std::vector<exact::ComplexRational>& u,
                             const std::vector<exact::ComplexRational>& v) {
  exact::ComplexRational acc;
  for (size_t i = 0; i < u.size(); ++i) acc = acc + u[i].conj() * v[i];
  return acc;
}

}  // namespace

bool SymbolExpr::is_real_valued() const {
  if (offset.im != 0) return false;
  std::map<Exponents, exact::ComplexRational> merged;
  for (const SymbolTerm& t : terms) {
    auto& slot = merged[exponents(t)];
    slot = slot + t.coef;
  }
  for (const auto& [e, coef] : merged) {
    if (coef.is_zero()) continue;
    const auto& [pz, qz, pw, qw, nz, nw] = e;
    auto it = merged.find({qz, pz, qw, pw, nz, nw});
    if (it == merged.end() || !(it->second == coef.conj())) return false;
  }
  return true;
}

SymbolExpr symbol_of_theorem2e() {
  const exact::Rational nine_halves(9, 2);
  SymbolExpr f;
  f.terms = {
      {{nine_halves}, 1, 1, 1, 1, 1, 1},   // |zw|^2
      {{-nine_halves}, 1, 0, 1, 0, 1, 1},  // -zw
      {{-nine_halves}, 0, 1, 0, 1, 1, 1},  // -zbar wbar
      {{nine_halves}, 0, 0, 0, 0, 1, 1},   // 1
  };
  f.offset = exact::ComplexRational(exact::Rational(-2));
  return f;
}

cplx evaluate_symbol(const SymbolExpr& f, AffinePoint z, AffinePoint w) {
  cplx acc = f.offset.to_complex();
  const double hz = 1.0 + std::norm(z.z);
  const double hw = 1.0 + std::norm(w.z);
  for (const SymbolTerm& t : f.terms) {
    acc += t.coef.to_complex() * std::pow(z.z, t.pz) * std::pow(std::conj(z.z), t.qz) *
           std::pow(w.z, t.pw) * std::pow(std::conj(w.z), t.qw) /
           (std::pow(hz, t.nz) * std::pow(hw, t.nw));
  }
  return acc;
}

ToeplitzMatrix toeplitz_matrix(const SymbolExpr& f, int k) {
  if (k < 1) throw PreconditionError("level k must be >= 1");
  const int dim = (k + 1) * (k + 1);
  ToeplitzMatrix out{k, f.offset.to_complex() * CMatrix::Identity(dim, dim)};
  for_each_coupling(f, k, [&](const SymbolTerm& t, int row, int col, int a, int b, int c, int d) {
    const double norms =
        basis_norm_const(k, a) * basis_norm_const(k, c) * basis_norm_const(k, b) * basis_norm_const(k, d);
    out.entries(row, col) += t.coef.to_complex() * norms *
                             monomial_integral_value(a + t.pz, k + t.nz) *
                             monomial_integral_value(b + t.pw, k + t.nw);
  });
  return out;
}

ExactMatrix toeplitz_matrix_exact(const SymbolExpr& f, int k) {
  if (k < 1) throw PreconditionError("level k must be >= 1");
  const int dim = (k + 1) * (k + 1);
  ExactMatrix out(static_cast<size_t>(dim), std::vector<exact::ExactComplex>(static_cast<size_t>(dim)));
  for (int r = 0; r < dim; ++r) out[static_cast<size_t>(r)][static_cast<size_t>(r)] = f.offset.to_exact();

  const auto uk = static_cast<unsigned>(k);
  for_each_coupling(f, k, [&](const SymbolTerm& t, int row, int col, int a, int b, int c, int d) {
    using exact::binomial;
    const exact::BigInt k1 = k + 1;
    const exact::SurdSum norms = exact::SurdSum::sqrt(
        k1 * k1 * k1 * k1 * binomial(uk, static_cast<unsigned>(a)) * binomial(uk, static_cast<unsigned>(c)) *
        binomial(uk, static_cast<unsigned>(b)) * binomial(uk, static_cast<unsigned>(d)));
    const exact::Rational integrals =
        monomial_integral(a + t.pz, k + t.nz) * monomial_integral(b + t.pw, k + t.nw);
    out[static_cast<size_t>(row)][static_cast<size_t>(col)] +=
        t.coef.to_exact() * exact::ExactComplex(norms * integrals);
  });
  return out;
}

ToeplitzMatrix projection_matrix(int k, const std::vector<StateTensor>& basis, double tol) {
  if (k < 1) throw PreconditionError("level k must be >= 1");
  const int dim = (k + 1) * (k + 1);
  CMatrix v(dim, static_cast<Eigen::Index>(basis.size()));
  for (size_t i = 0; i < basis.size(); ++i) {
    if (basis[i].level() != k) throw PreconditionError("basis element has the wrong level");
    v.col(static_cast<Eigen::Index>(i)) = basis[i].flatten();
  }
  if (!basis.empty()) {
    const CMatrix gram = v.adjoint() * v;
    const double dev = (gram - CMatrix::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff();
    if (dev > tol) throw NotOrthonormal("basis deviates from orthonormal by " + std::to_string(dev));
  }
  return {k, v * v.adjoint()};
}

ExactMatrix projection_matrix_exact(int k, const std::vector<ExactState>& directions) {
  if (k < 1) throw PreconditionError("level k must be >= 1");
  const auto dim = static_cast<size_t>((k + 1) * (k + 1));
  std::vector<std::vector<exact::ComplexRational>> ortho;
  for (const ExactState& s : directions) {
    if (s.level != k) throw PreconditionError("direction has the wrong level");
    std::vector<exact::ComplexRational> v = s.coeffs;
    for (const auto& u : ortho) {
      const exact::ComplexRational coef = inner(u, v) / inner(u, u);
      for (size_t i = 0; i < dim; ++i) v[i] = v[i] - coef * u[i];
    }
    bool zero = true;
    for (const auto& x : v) zero = zero && x.is_zero();
    if (!zero) ortho.push_back(std::move(v));  // linearly dependent directions are skipped
  }

  ExactMatrix out(dim, std::vector<exact::ExactComplex>(dim));
  for (const auto& u : ortho) {
    const exact::Rational scale = 1 / inner(u, u).re;
    for (size_t r = 0; r < dim; ++r) {
      if (u[r].is_zero()) continue;
      for (size_t c = 0; c < dim; ++c) {
        if (u[c].is_zero()) continue;
        const exact::ComplexRational e = u[r] * u[c].conj() * exact::ComplexRational(scale);
        out[r][c] += e.to_exact();
      }
    }
  }
  return out;
}

ExactMatrix to_exact(const std::vector<std::vector<exact::SurdSum>>& m) {
  ExactMatrix out(m.size());
  for (size_t r = 0; r < m.size(); ++r) {
    out[r].reserve(m[r].size());
    for (const auto& x : m[r]) out[r].emplace_back(x);
  }
  return out;
}

CMatrix to_complex(const ExactMatrix& m) {
  const auto n = static_cast<Eigen::Index>(m.size());
  CMatrix out(n, n);
  for (Eigen::Index r = 0; r < n; ++r)
    for (Eigen::Index c = 0; c < n; ++c)
      out(r, c) = m[static_cast<size_t>(r)][static_cast<size_t>(c)].to_complex();
  return out;
}

bool exact_equal(const ExactMatrix& a, const ExactMatrix& b) { return a == b; }

double max_abs_diff(const CMatrix& a, const CMatrix& b) { return (a - b).cwiseAbs().maxCoeff(); }

}  // namespace cp1ent
