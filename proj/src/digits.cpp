#include "chih/digits.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace chih {

void DigitString::check_rho() const {
  if (rho_ < 2) throw std::invalid_argument("digit base must be >= 2");
}

DigitString::DigitString(unsigned rho, std::vector<unsigned> digits) : rho_(rho), digits_(std::move(digits)) {
  check_rho();
  for (unsigned d : digits_) {
    if (d >= rho_) throw std::invalid_argument("digit " + std::to_string(d) + " out of range for base " + std::to_string(rho_));
  }
}

std::size_t DigitString::nonzero_count() const {
  return static_cast<std::size_t>(std::count_if(digits_.begin(), digits_.end(), [](unsigned d) { return d != 0; }));
}

std::string DigitString::str() const {
  std::string s = "(";
  for (std::size_t k = 0; k < digits_.size(); ++k) {
    if (k) s += ",";
    s += std::to_string(digits_[k]);
  }
  return s + ")";
}

DigitString to_string(const Integer& n, unsigned rho) {
  if (n < 0) throw std::invalid_argument("to_string: n must be >= 0");
  std::vector<unsigned> out;
  Integer m = n;
  while (m != 0) {
    out.push_back(static_cast<unsigned>(mpz_fdiv_q_ui(m.get_mpz_t(), m.get_mpz_t(), rho)));
  }
  return DigitString(rho, std::move(out));
}

Integer from_string(const DigitString& j) {
  Integer n = 0;
  for (auto it = j.digits().rbegin(); it != j.digits().rend(); ++it) {
    n *= j.rho();
    n += *it;
  }
  return n;
}

unsigned long lambda_rho(const Integer& n, unsigned rho) {
  if (n < 0) throw std::invalid_argument("lambda_rho: n must be >= 0");
  if (rho < 2) throw std::invalid_argument("lambda_rho: rho must be >= 2");
  // smallest k with n + 1 <= rho^k
  const Integer target = n + 1;
  Integer p = 1;
  unsigned long k = 0;
  while (p < target) {
    p *= rho;
    ++k;
  }
  return k;
}

unsigned long count_digit(const Integer& n, unsigned k, unsigned rho) {
  if (k >= rho) throw std::invalid_argument("count_digit: k out of range");
  return count_digit(to_string(n, rho), k);
}

unsigned long count_digit(const DigitString& j, unsigned k) {
  if (k >= j.rho()) throw std::invalid_argument("count_digit: k out of range");
  return static_cast<unsigned long>(std::count(j.digits().begin(), j.digits().end(), k));
}

std::vector<unsigned long> digit_counts(const Integer& n, unsigned rho) {
  std::vector<unsigned long> counts(rho, 0);
  const DigitString j = to_string(n, rho);
  for (unsigned d : j.digits()) ++counts[d];
  return counts;
}

DigitString concat(const DigitString& i, const DigitString& j) {
  if (i.rho() != j.rho()) {
    throw BaseMismatch("concat of base " + std::to_string(i.rho()) + " and base " + std::to_string(j.rho()));
  }
  std::vector<unsigned> out = i.digits();
  out.insert(out.end(), j.digits().begin(), j.digits().end());
  return DigitString(i.rho(), std::move(out));
}

DigitString repeat(const DigitString& j, unsigned m) {
  if (m < 1) throw std::invalid_argument("repeat: m must be >= 1");
  std::vector<unsigned> out;
  out.reserve(j.size() * m);
  for (unsigned r = 0; r < m; ++r) out.insert(out.end(), j.digits().begin(), j.digits().end());
  return DigitString(j.rho(), std::move(out));
}

Rational B_rho(const Integer& n, unsigned rho) {
  if (n < 0) throw std::invalid_argument("B_rho: n must be >= 0");
  if (n == 0) return Rational();
  const Rational b(n, 1 - ipow(Integer(rho), lambda_rho(n, rho)));
  assert(mpz_divisible_ui_p(b.den().get_mpz_t(), rho) == 0);
  return b;
}

}  // namespace chih
