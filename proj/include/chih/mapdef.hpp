#pragma once

// Collatz-type maps H(n) = (a_j n + b_j) / d_j for n = j mod rho.

#include <cstdint>
#include <string>
#include <vector>

#include "chih/exact_arith.hpp"

namespace chih {

struct Branch {
  std::int64_t a = 1;
  std::int64_t b = 0;
  std::int64_t d = 1;
};

/// Classification of a map. `valid` only demands that each branch is
/// integral on its own residue class; the converse direction is reported
/// separately as `integrality_only_if`.
struct MapFlags {
  bool coprime = false;           // gcd(a_j, d_j) = 1 for all j
  bool mu_integral = false;       // d_j | rho * a_j for all j
  bool valid = false;
  bool integrality_only_if = false;
  bool fixes_zero = false;        // b_0 = 0
  bool non_degenerate = false;    // a_j != 1 for j != 0
  bool monogenic = false;         // q_H >= 2
  bool semi_simple = false;       // gcd(a_j, d_k) = 1 for all j, k
  bool simple = false;            // d_j = rho for all j
  bool semi_basic = false;
  bool basic = false;
};

class MapDef {
 public:
  /// Throws MalformedDefinition for rho < 2, a branch count other than rho,
  /// a_j <= 0 or d_j <= 0.
  MapDef(unsigned rho, std::vector<Branch> branches);

  /// The shortened ax+1 map T_a: n/2 on evens, (a n + 1)/2 on odds.
  static MapDef t_a(std::int64_t a);
  /// The Collatz map C: n/2 on evens, 3n + 1 on odds.
  static MapDef collatz();

  unsigned rho() const { return rho_; }
  const std::vector<Branch>& branches() const { return branches_; }
  const Branch& branch(unsigned j) const { return branches_.at(j); }

  /// mu_j = rho a_j / d_j as a rational (an integer whenever flags().mu_integral).
  const std::vector<Rational>& mu_rational() const { return mu_; }
  /// mu_j as an integer; throws MapRequirement if it is not integral.
  Integer mu(unsigned j) const;

  const MapFlags& flags() const { return flags_; }
  /// q_H, or 0 when every a_j = 1.
  std::uint64_t q_or_zero() const { return q_; }

  /// Throws MapRequirement unless the map has the named property.
  void require_valid() const;
  void require_fixes_zero() const;
  void require_semi_basic() const;
  void require_basic() const;

 private:
  unsigned rho_;
  std::vector<Branch> branches_;
  std::vector<Rational> mu_;
  std::uint64_t q_ = 0;
  MapFlags flags_;
};

/// Recomputes every classification flag from the raw coefficients.
MapFlags validate(const MapDef& def);

/// gcd of {a_j : a_j != 1}. Throws AllCoefficientsOne if that set is empty.
std::uint64_t q_of(const MapDef& def);

/// (a_j x + b_j) / d_j.
Rational branch_eval(const MapDef& def, unsigned j, const Rational& x);

/// n mod rho in [0, rho).
unsigned residue_class(const Integer& n, unsigned rho);

/// H(n). Throws NonIntegerResult if the branch for n mod rho does not
/// produce an integer (which can only happen for an invalid map).
Integer apply(const MapDef& def, const Integer& n);

/// Parses {"rho": R, "branches": [{"a":..,"b":..,"d":..}, ...]}.
/// Throws MalformedDefinition with the offending field in the message.
MapDef parse_map_json(const std::string& text);
MapDef load_map_file(const std::string& path);

std::string to_json(const MapDef& def);

}  // namespace chih
