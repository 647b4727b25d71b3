#pragma once

// Exact rationals, q-adic valuations and residues mod q^N.
//
// q need not be prime. Z_q is modelled purely by residues mod q^N, and
// nu_q(x) is the largest k with q^k dividing the numerator of x.

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>

#include "chih/errors.hpp"

namespace chih {

using Integer = mpz_class;

/// Reduced fraction with positive denominator; zero is 0/1.
class Rational {
 public:
  Rational() = default;
  Rational(long v) : v_(v) {}  // NOLINT(google-explicit-constructor)
  Rational(const Integer& v) : v_(v) {}  // NOLINT(google-explicit-constructor)
  Rational(const Integer& num, const Integer& den);

  const Integer& num() const { return v_.get_num(); }
  const Integer& den() const { return v_.get_den(); }

  bool is_zero() const { return sgn(v_) == 0; }
  bool is_integer() const { return v_.get_den() == 1; }
  int sign() const { return sgn(v_); }

  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  Rational operator-() const;

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.v_, b.v_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  double to_double() const { return v_.get_d(); }

  /// "p/q", or "p" when the value is an integer. Sign always on the numerator.
  std::string str() const;

 private:
  mpq_class v_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

/// Integer power base^exp.
Integer ipow(const Integer& base, unsigned long exp);

/// Euclidean residue of n mod m, in [0, m).
Integer mod_floor(const Integer& n, const Integer& m);

/// q-adic valuation; +infinity for zero.
class Valuation {
 public:
  static Valuation infinity() { return Valuation(); }
  explicit Valuation(unsigned long k) : finite_(true), k_(k) {}

  bool is_infinite() const { return !finite_; }
  /// Undefined for the infinite valuation.
  unsigned long value() const { return k_; }

  friend Valuation operator+(const Valuation& a, const Valuation& b) {
    if (a.is_infinite() || b.is_infinite()) return infinity();
    return Valuation(a.k_ + b.k_);
  }
  friend bool operator==(const Valuation&, const Valuation&) = default;
  friend std::strong_ordering operator<=>(const Valuation& a, const Valuation& b) {
    if (a.finite_ != b.finite_) return a.finite_ ? std::strong_ordering::less : std::strong_ordering::greater;
    return a.k_ <=> b.k_;
  }

 private:
  Valuation() = default;
  bool finite_ = false;
  unsigned long k_ = 0;
};

/// Largest k with q^k | numerator(x). Requires gcd(den(x), q) = 1.
/// Throws DenominatorNotCoprime otherwise.
Valuation nu_q(const Rational& x, std::uint64_t q);

/// |x|_q = q^-nu_q(x), as a double (0 for x = 0).
double abs_q(const Rational& x, std::uint64_t q);

/// A q-adic integer known modulo q^N. Precision 0 carries no information
/// (residue is always 0).
class QadicApprox {
 public:
  QadicApprox(std::uint64_t q, unsigned precision, const Integer& residue);

  std::uint64_t base() const { return q_; }
  unsigned precision() const { return n_; }
  const Integer& residue() const { return residue_; }
  Integer modulus() const { return ipow(Integer(q_), n_); }

  /// Same value known to a lower precision.
  QadicApprox truncate(unsigned precision) const;

  friend bool operator==(const QadicApprox&, const QadicApprox&) = default;

 private:
  std::uint64_t q_;
  unsigned n_;
  Integer residue_;
};

/// Embeds x into Z_q at precision N: numerator * denominator^-1 mod q^N.
/// Throws NotQadicInteger when q divides the denominator (negative
/// valuation) and DenominatorNotCoprime for any other shared factor.
QadicApprox to_qadic(const Rational& x, std::uint64_t q, unsigned precision);

// Ring operations. Result precision is the minimum of the operands'.
// Mixing bases throws BaseMismatch.
QadicApprox qadic_add(const QadicApprox& a, const QadicApprox& b);
QadicApprox qadic_sub(const QadicApprox& a, const QadicApprox& b);
QadicApprox qadic_mul(const QadicApprox& a, const QadicApprox& b);
QadicApprox qadic_neg(const QadicApprox& a);

}  // namespace chih
