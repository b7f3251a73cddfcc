#include "cp1ent/cp1_sections.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cp1ent/errors.hpp"

namespace cp1ent {

namespace {

void check_index(int k, int j) {
  if (k < 0 || j < 0 || j > k)
    throw IndexOutOfRange("basis index j=" + std::to_string(j) + " outside [0, " +
                          std::to_string(k) + "]");
}

}  // namespace

BasisIndex::BasisIndex(int level, int index) : k(level), j(index) { check_index(k, j); }

double basis_norm_const_loggamma(int k, int j) {
  check_index(k, j);
  j = std::min(j, k - j);  // keeps (k, j) and (k, k-j) bit-identical
  const double log_sq = std::log(k + 1.0) + std::lgamma(k + 1.0) - std::lgamma(j + 1.0) -
                        std::lgamma(k - j + 1.0);
  return std::exp(0.5 * log_sq);
}

double basis_norm_const(int k, int j) {
  check_index(k, j);
  if (k > kExactBinomialMaxLevel) return basis_norm_const_loggamma(k, j);
  // (k+1) binom(k,j) < 2^53 for k <= 40, so the integer converts exactly.
  const exact::BigInt sq = (k + 1) * exact::binomial(static_cast<unsigned>(k), static_cast<unsigned>(j));
  return std::sqrt(static_cast<double>(sq));
}

exact::SurdSum basis_norm_const_exact(int k, int j) {
  check_index(k, j);
  return exact::SurdSum::sqrt((k + 1) * exact::binomial(static_cast<unsigned>(k), static_cast<unsigned>(j)));
}

exact::Rational monomial_integral(int a, int n) {
  if (a < 0 || n < 0) throw DomainError("monomial_integral needs nonnegative exponents");
  if (a > n)
    throw DomainError("monomial_integral(" + std::to_string(a) + ", " + std::to_string(n) +
                      ") diverges: a > N");
  using exact::factorial;
  const auto ua = static_cast<unsigned>(a);
  const auto un = static_cast<unsigned>(n);
  return exact::Rational(factorial(ua) * factorial(un - ua), factorial(un + 1));
}

double monomial_integral_value(int a, int n) {
  if (a < 0 || n < 0) throw DomainError("monomial_integral needs nonnegative exponents");
  if (a > n) throw DomainError("monomial_integral diverges: a > N");
  if (n <= 2 * kExactBinomialMaxLevel) return exact::to_double(monomial_integral(a, n));
  return std::exp(std::lgamma(a + 1.0) + std::lgamma(n - a + 1.0) - std::lgamma(n + 2.0));
}

cplx evaluate_section(const StateTensor& c, AffinePoint z, AffinePoint w) {
  const int k = c.level();
  Eigen::VectorXcd ez(k + 1), ew(k + 1);
  cplx zp = 1.0, wp = 1.0;
  for (int j = 0; j <= k; ++j) {
    const double nj = basis_norm_const(k, j);
    ez(j) = nj * zp;
    ew(j) = nj * wp;
    zp *= z.z;
    wp *= w.z;
  }
  return ez.transpose() * c.coeffs() * ew;
}

double section_inner_product(int k, int i, int j) {
  check_index(k, i);
  check_index(k, j);
  if (i != j) return 0.0;
  return basis_norm_const(k, i) * basis_norm_const(k, j) * monomial_integral_value(i, k);
}

}  // namespace cp1ent
