#pragma once

// chi_H and M_H on strings, integers and rho-adic points.
//
// chi_H(j) = H_{j_1} o ... o H_{j_L}(0) and M_H(j) is the slope of that
// composition. Two evaluation routes exist for chi_H: the closed-form sum
// (chi_of_string) and literal branch composition (chi_by_composition);
// they must always agree.

#include <cstdint>
#include <functional>
#include <variant>

#include "chih/digits.hpp"
#include "chih/mapdef.hpp"

namespace chih {

/// x -> slope * x + intercept.
struct AffineForm {
  Rational slope = 1;
  Rational intercept = 0;

  Rational operator()(const Rational& x) const { return slope * x + intercept; }
  friend bool operator==(const AffineForm&, const AffineForm&) = default;
};

/// Product of a_{j_k}/d_{j_k} over the literal tuple; 1 for the empty string.
Rational M_of_string(const MapDef& def, const DigitString& j);

/// M_H on the shortest string of n; M_H(0) = 1.
Rational M_of_n(const MapDef& def, const Integer& n);

/// Closed form sum_m (b_{j_m}/d_{j_m}) prod_{k<m} a_{j_k}/d_{j_k}.
Rational chi_of_string(const MapDef& def, const DigitString& j);

/// H_{j_1}(H_{j_2}(... H_{j_L}(0))), evaluated branch by branch.
Rational chi_by_composition(const MapDef& def, const DigitString& j);

/// H_j(x) by literal composition (last entry applied first).
Rational compose_eval(const MapDef& def, const DigitString& j, const Rational& x);

Rational chi_of_n(const MapDef& def, const Integer& n);

/// (M_H(j), chi_H(j)).
AffineForm affine_of_string(const MapDef& def, const DigitString& j);

/// Integer data behind chi_H o B_rho: with L = |j| and P = prod mu_{j_k},
/// scaled = rho^L chi_H(j) (always an integer for a valid map) and
/// denominator = rho^L - P, so that the fixed point of H_j is
/// scaled / denominator.
struct ScaledChi {
  unsigned long length = 0;
  Integer scaled;
  Integer mu_product = 1;
  Integer denominator;
};

ScaledChi scaled_chi(const MapDef& def, const DigitString& j);
/// scaled_chi on the shortest string of n.
ScaledChi scaled_chi(const MapDef& def, const Integer& n);

/// A point of Z_rho: a non-negative integer, a rational with denominator
/// coprime to rho, or an on-demand digit generator (index 0 = least
/// significant digit).
class RhoAdicPoint {
 public:
  using Generator = std::function<unsigned(std::size_t)>;

  static RhoAdicPoint integer(const Integer& n);
  static RhoAdicPoint rational(const Rational& x);
  static RhoAdicPoint generator(Generator g);

  /// True when the point is a rational integer >= 0 (finitely many
  /// nonzero digits).
  bool is_nonnegative_integer() const;
  /// Only meaningful when is_nonnegative_integer().
  Integer as_integer() const;

 private:
  friend class DigitStream;
  struct Gen {
    Generator g;
  };
  std::variant<Integer, Rational, Gen> v_;
};

/// Sequential digit reader for a RhoAdicPoint in base rho. Rational points
/// use z -> (z - d)/rho with d = z mod rho, which yields the eventually
/// periodic expansion without materializing it.
class DigitStream {
 public:
  /// Throws DenominatorNotCoprime if a rational point's denominator shares a
  /// factor with rho.
  DigitStream(const RhoAdicPoint& z, unsigned rho);
  unsigned next();

 private:
  RhoAdicPoint::Generator gen_;
  unsigned rho_;
  std::size_t index_ = 0;
  Integer num_;
  Integer den_;
};

/// First m digits of z as a string.
DigitString truncate_point(const RhoAdicPoint& z, unsigned rho, std::size_t m);

/// chi_H([z]_{rho^m}).
Rational chi_truncated(const MapDef& def, const RhoAdicPoint& z, std::size_t m);

/// chi_H(z) mod q_H^N. Digits are consumed until N nonzero digits have been
/// seen; every remaining term of the series then has q_H-adic valuation at
/// least N. Integer points are evaluated exactly. Throws PrecisionUnreachable
/// if fewer than N nonzero digits appear within digit_budget digits.
QadicApprox chi_qadic(const MapDef& def, const RhoAdicPoint& z, unsigned precision,
                      std::size_t digit_budget = 1u << 20);

/// chi_H(B_rho(n)) = chi_H(n) / (1 - M_H(n)) for n >= 1. Both this quotient
/// and rho^lambda chi_H(n) / (rho^lambda - prod mu_j^#j) are computed and
/// must agree. Throws UnitSlope if M_H(n) = 1.
Rational chi_B(const MapDef& def, const Integer& n);

/// The unique fixed point of H_j for a basic map: the sum of
/// (b/a)(prod a) rho^(L-n) over rho^L - prod a. Throws UnitSlope when the
/// denominator vanishes.
Rational x_of_string(const MapDef& def, const DigitString& j);

}  // namespace chih
