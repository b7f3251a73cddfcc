#pragma once

// Exact arithmetic used to certify identities without floating-point slack:
// arbitrary-precision rationals and finite sums  sum_r q_r * sqrt(r)  over
// squarefree radicands r. Square roots of distinct squarefree integers are
// linearly independent over Q, so the representation below is canonical and
// equality/zero tests are exact.

#include <complex>
#include <cstdint>
#include <map>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace cp1ent::exact {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

BigInt factorial(unsigned n);
BigInt binomial(unsigned n, unsigned k);

double to_double(const Rational& q);

class SurdSum {
public:
  SurdSum() = default;
  SurdSum(const Rational& q);  // NOLINT: implicit promotion from Q is intended
  SurdSum(long long n) : SurdSum(Rational(n)) {}  // NOLINT

  // sqrt(n) for a nonnegative integer n, reduced to m*sqrt(s) with s squarefree.
  // Throws DomainError if n has a prime factor above 2^16 that cannot be
  // resolved by a perfect-square test.
  static SurdSum sqrt(const BigInt& n);

  bool is_zero() const { return terms_.empty(); }
  // Present only when every radicand is 1.
  bool is_rational() const;
  Rational rational_part() const;

  const std::map<BigInt, Rational>& terms() const { return terms_; }

  SurdSum& operator+=(const SurdSum& o);
  SurdSum& operator-=(const SurdSum& o);
  SurdSum& operator*=(const Rational& q);
  friend SurdSum operator+(SurdSum a, const SurdSum& b) { return a += b; }
  friend SurdSum operator-(SurdSum a, const SurdSum& b) { return a -= b; }
  friend SurdSum operator-(SurdSum a) { return a *= Rational(-1); }
  friend SurdSum operator*(SurdSum a, const Rational& q) { return a *= q; }
  friend SurdSum operator*(const Rational& q, SurdSum a) { return a *= q; }
  friend SurdSum operator*(const SurdSum& a, const SurdSum& b);
  friend bool operator==(const SurdSum& a, const SurdSum& b) { return a.terms_ == b.terms_; }

  double to_double() const;
  std::string str() const;

private:
  void add_term(const BigInt& radicand, const Rational& coef);
  std::map<BigInt, Rational> terms_;  // radicand -> coefficient, no zero coefficients
};

// Complex number with SurdSum real and imaginary parts.
struct ExactComplex {
  SurdSum re;
  SurdSum im;

  ExactComplex() = default;
  ExactComplex(SurdSum r, SurdSum i = {}) : re(std::move(r)), im(std::move(i)) {}  // NOLINT

  bool is_zero() const { return re.is_zero() && im.is_zero(); }
  ExactComplex& operator+=(const ExactComplex& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  ExactComplex& operator-=(const ExactComplex& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  friend ExactComplex operator+(ExactComplex a, const ExactComplex& b) { return a += b; }
  friend ExactComplex operator-(ExactComplex a, const ExactComplex& b) { return a -= b; }
  friend ExactComplex operator*(const ExactComplex& a, const ExactComplex& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend bool operator==(const ExactComplex& a, const ExactComplex& b) {
    return a.re == b.re && a.im == b.im;
  }
  std::complex<double> to_complex() const { return {re.to_double(), im.to_double()}; }
};

// Complex rational, used for symbol coefficients. Doubles convert exactly.
struct ComplexRational {
  Rational re;
  Rational im;

  ComplexRational() = default;
  ComplexRational(Rational r, Rational i = Rational(0)) : re(std::move(r)), im(std::move(i)) {}  // NOLINT
  static ComplexRational from_complex(std::complex<double> z) {
    return {Rational(z.real()), Rational(z.imag())};
  }
  ComplexRational conj() const { return {re, -im}; }
  bool is_zero() const { return re == 0 && im == 0; }
  Rational norm_sq() const { return re * re + im * im; }
  friend ComplexRational operator+(const ComplexRational& a, const ComplexRational& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend ComplexRational operator-(const ComplexRational& a, const ComplexRational& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend ComplexRational operator*(const ComplexRational& a, const ComplexRational& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  // Throws DomainError on division by zero.
  friend ComplexRational operator/(const ComplexRational& a, const ComplexRational& b);
  ExactComplex to_exact() const { return {SurdSum(re), SurdSum(im)}; }
  std::complex<double> to_complex() const { return {to_double(re), to_double(im)}; }
  friend bool operator==(const ComplexRational&, const ComplexRational&) = default;
};

}  // namespace cp1ent::exact
