#include "chih/exact_arith.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

namespace chih {

Rational::Rational(const Integer& num, const Integer& den) : v_(num, den) {
  if (den == 0) throw std::domain_error("Rational: zero denominator");
  v_.canonicalize();
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw std::domain_error("Rational: division by zero");
  v_ /= o.v_;
  return *this;
}

Rational Rational::operator-() const {
  Rational r;
  r.v_ = -v_;
  return r;
}

std::string Rational::str() const {
  if (is_integer()) return num().get_str();
  return num().get_str() + "/" + den().get_str();
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

Integer ipow(const Integer& base, unsigned long exp) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
  return r;
}

Integer mod_floor(const Integer& n, const Integer& m) {
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), n.get_mpz_t(), m.get_mpz_t());
  if (r < 0) r += abs(m);
  return r;
}

namespace {

void check_base(std::uint64_t q) {
  if (q < 2) throw std::invalid_argument("q-adic base must be >= 2");
}

void check_coprime_den(const Rational& x, std::uint64_t q) {
  Integer g;
  const Integer qq(q);
  mpz_gcd(g.get_mpz_t(), x.den().get_mpz_t(), qq.get_mpz_t());
  if (g != 1) {
    throw DenominatorNotCoprime("denominator " + x.den().get_str() + " shares a factor with q = " +
                                std::to_string(q));
  }
}

}  // namespace

Valuation nu_q(const Rational& x, std::uint64_t q) {
  check_base(q);
  check_coprime_den(x, q);
  if (x.is_zero()) return Valuation::infinity();
  Integer n = abs(x.num());
  const Integer qq(q);
  unsigned long k = 0;
  while (mpz_divisible_p(n.get_mpz_t(), qq.get_mpz_t())) {
    mpz_divexact(n.get_mpz_t(), n.get_mpz_t(), qq.get_mpz_t());
    ++k;
  }
  return Valuation(k);
}

double abs_q(const Rational& x, std::uint64_t q) {
  const Valuation v = nu_q(x, q);
  if (v.is_infinite()) return 0.0;
  return std::pow(static_cast<double>(q), -static_cast<double>(v.value()));
}

QadicApprox::QadicApprox(std::uint64_t q, unsigned precision, const Integer& residue)
    : q_(q), n_(precision) {
  check_base(q);
  residue_ = mod_floor(residue, modulus());
}

QadicApprox QadicApprox::truncate(unsigned precision) const {
  if (precision > n_) throw std::invalid_argument("QadicApprox::truncate cannot raise precision");
  return QadicApprox(q_, precision, residue_);
}

QadicApprox to_qadic(const Rational& x, std::uint64_t q, unsigned precision) {
  check_base(q);
  if (mpz_divisible_ui_p(x.den().get_mpz_t(), q)) {
    throw NotQadicInteger(x.str() + " has negative " + std::to_string(q) + "-adic valuation");
  }
  check_coprime_den(x, q);
  const Integer mod = ipow(Integer(q), precision);
  if (mod == 1) return QadicApprox(q, 0, 0);
  Integer inv;
  mpz_invert(inv.get_mpz_t(), x.den().get_mpz_t(), mod.get_mpz_t());
  return QadicApprox(q, precision, x.num() * inv);
}

namespace {

void check_same_base(const QadicApprox& a, const QadicApprox& b) {
  if (a.base() != b.base()) {
    throw BaseMismatch("q = " + std::to_string(a.base()) + " vs q = " + std::to_string(b.base()));
  }
}

}  // namespace

QadicApprox qadic_add(const QadicApprox& a, const QadicApprox& b) {
  check_same_base(a, b);
  return QadicApprox(a.base(), std::min(a.precision(), b.precision()), a.residue() + b.residue());
}

QadicApprox qadic_sub(const QadicApprox& a, const QadicApprox& b) {
  check_same_base(a, b);
  return QadicApprox(a.base(), std::min(a.precision(), b.precision()), a.residue() - b.residue());
}

QadicApprox qadic_mul(const QadicApprox& a, const QadicApprox& b) {
  check_same_base(a, b);
  return QadicApprox(a.base(), std::min(a.precision(), b.precision()), a.residue() * b.residue());
}

QadicApprox qadic_neg(const QadicApprox& a) {
  return QadicApprox(a.base(), a.precision(), -a.residue());
}

}  // namespace chih
