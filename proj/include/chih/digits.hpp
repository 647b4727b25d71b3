#pragma once

// Base-rho digit strings.
//
// Orientation: digits()[0] is the least significant digit, i.e. the entry
// j_1 in n = j_1 + j_2 rho + ... + j_L rho^(L-1). When a string names a
// composition of branches, j_1 is the outermost branch and the last entry
// is the first branch applied. The empty string represents 0.

#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include "chih/exact_arith.hpp"

namespace chih {

class DigitString {
 public:
  explicit DigitString(unsigned rho) : rho_(rho) { check_rho(); }
  DigitString(unsigned rho, std::vector<unsigned> digits);
  DigitString(unsigned rho, std::initializer_list<unsigned> digits)
      : DigitString(rho, std::vector<unsigned>(digits)) {}

  unsigned rho() const { return rho_; }
  const std::vector<unsigned>& digits() const { return digits_; }
  std::size_t size() const { return digits_.size(); }
  bool empty() const { return digits_.empty(); }
  /// 0-based access; entry k is j_(k+1).
  unsigned operator[](std::size_t k) const { return digits_[k]; }

  /// Number of nonzero entries.
  std::size_t nonzero_count() const;

  /// "(2,0,2)" style rendering, least significant first.
  std::string str() const;

  friend bool operator==(const DigitString&, const DigitString&) = default;

 private:
  void check_rho() const;
  unsigned rho_;
  std::vector<unsigned> digits_;
};

/// Shortest representation of n >= 0 (empty for 0).
DigitString to_string(const Integer& n, unsigned rho);

/// sum_k j_k rho^(k-1). Trailing zeros do not change the value.
Integer from_string(const DigitString& j);

/// Number of base-rho digits of n, ceil(log_rho(n + 1)); 0 for n = 0.
/// Exact integer comparisons only.
unsigned long lambda_rho(const Integer& n, unsigned rho);

/// #_{rho:k} on the shortest expansion of n (0 for n = 0).
unsigned long count_digit(const Integer& n, unsigned k, unsigned rho);
/// #_{rho:k} on the literal tuple.
unsigned long count_digit(const DigitString& j, unsigned k);

/// Per-digit counts (#_{rho:0}(n), ..., #_{rho:rho-1}(n)).
std::vector<unsigned long> digit_counts(const Integer& n, unsigned rho);

/// i followed by j. Throws BaseMismatch for different bases.
DigitString concat(const DigitString& i, const DigitString& j);

/// m >= 1 copies of j.
DigitString repeat(const DigitString& j, unsigned m);

/// B_rho(n) = n / (1 - rho^lambda(n)), B_rho(0) = 0. The result always has
/// denominator coprime to rho.
Rational B_rho(const Integer& n, unsigned rho);

}  // namespace chih
