#include "cp1ent/exact.hpp"

#include <sstream>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "cp1ent/errors.hpp"

namespace cp1ent::exact {

namespace {

using Float = boost::multiprecision::cpp_bin_float_50;

constexpr unsigned kTrialLimit = 1u << 16;

bool is_perfect_square(const BigInt& n, BigInt& root) {
  root = boost::multiprecision::sqrt(n);
  return root * root == n;
}

}  // namespace

BigInt factorial(unsigned n) {
  BigInt r = 1;
  for (unsigned i = 2; i <= n; ++i) r *= i;
  return r;
}

BigInt binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  BigInt r = 1;
  for (unsigned i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;
  }
  return r;
}

double to_double(const Rational& q) {
  return static_cast<double>(Float(boost::multiprecision::numerator(q)) /
                             Float(boost::multiprecision::denominator(q)));
}

SurdSum::SurdSum(const Rational& q) { add_term(1, q); }

SurdSum SurdSum::sqrt(const BigInt& n) {
  if (n < 0) throw DomainError("square root of a negative integer");
  SurdSum out;
  if (n == 0) return out;

  BigInt rest = n;
  BigInt outside = 1;
  BigInt radicand = 1;
  bool exhausted = false;  // every prime up to sqrt(rest) was tried
  for (unsigned p = 2;; ++p) {
    if (BigInt(p) * p > rest) {
      exhausted = true;
      break;
    }
    if (p >= kTrialLimit) break;
    unsigned mult = 0;
    while (rest % p == 0) {
      rest /= p;
      ++mult;
    }
    for (unsigned i = 0; i + 1 < mult; i += 2) outside *= p;
    if (mult % 2 == 1) radicand *= p;
  }
  if (rest > 1) {
    BigInt root;
    if (exhausted || rest < BigInt(kTrialLimit) * kTrialLimit) {
      radicand *= rest;  // prime
    } else if (is_perfect_square(rest, root)) {
      outside *= root;
    } else {
      throw DomainError("radicand too large for exact squarefree reduction");
    }
  }
  out.add_term(radicand, Rational(outside));
  return out;
}

bool SurdSum::is_rational() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == 1);
}

Rational SurdSum::rational_part() const {
  auto it = terms_.find(1);
  return it == terms_.end() ? Rational(0) : it->second;
}

void SurdSum::add_term(const BigInt& radicand, const Rational& coef) {
  if (coef == 0) return;
  auto [it, inserted] = terms_.try_emplace(radicand, coef);
  if (!inserted) {
    it->second += coef;
    if (it->second == 0) terms_.erase(it);
  }
}

SurdSum& SurdSum::operator+=(const SurdSum& o) {
  for (const auto& [r, q] : o.terms_) add_term(r, q);
  return *this;
}

SurdSum& SurdSum::operator-=(const SurdSum& o) {
  for (const auto& [r, q] : o.terms_) add_term(r, -q);
  return *this;
}

SurdSum& SurdSum::operator*=(const Rational& q) {
  if (q == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [r, c] : terms_) c *= q;
  return *this;
}

SurdSum operator*(const SurdSum& a, const SurdSum& b) {
  SurdSum out;
  for (const auto& [ra, qa] : a.terms_) {
    for (const auto& [rb, qb] : b.terms_) {
      // sqrt(ra)*sqrt(rb) = g*sqrt(ra*rb/g^2) with g = gcd, both squarefree.
      BigInt g = boost::multiprecision::gcd(ra, rb);
      BigInt s = (ra / g) * (rb / g);
      out.add_term(s, qa * qb * Rational(g));
    }
  }
  return out;
}

double SurdSum::to_double() const {
  Float acc = 0;
  for (const auto& [r, q] : terms_) {
    Float term = Float(boost::multiprecision::numerator(q)) /
                 Float(boost::multiprecision::denominator(q));
    if (r != 1) term *= boost::multiprecision::sqrt(Float(r));
    acc += term;
  }
  return static_cast<double>(acc);
}

std::string SurdSum::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [r, q] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << q;
    if (r != 1) os << "*sqrt(" << r << ")";
  }
  return os.str();
}

ComplexRational operator/(const ComplexRational& a, const ComplexRational& b) {
  const Rational d = b.norm_sq();
  if (d == 0) throw DomainError("division by zero");
  const ComplexRational num = a * b.conj();
  return {num.re / d, num.im / d};
}

}  // namespace cp1ent::exact
