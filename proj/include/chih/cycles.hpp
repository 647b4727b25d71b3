#pragma once

// Periodic points of H: a direct-iteration oracle, the search over
// chi_H(B_rho(n)), the inverse map from cycles to seeds n, the wrong-value
// audit and the cycle-denominator diagnostic.

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "chih/chi.hpp"

namespace chih {

/// Cycle members in orbit order, starting at the member of smallest
/// absolute value (the negative one first on a tie).
using Cycle = std::vector<Integer>;

struct EnteredCycle {
  Cycle cycle;
};
struct Escaped {
  Integer bound;
};
struct StepLimit {};

struct Orbit {
  Integer start;
  std::vector<Integer> states;  // states[0] = start, states[k+1] = H(states[k])
  std::variant<EnteredCycle, Escaped, StepLimit> terminal;

  const Cycle* cycle() const {
    const auto* c = std::get_if<EnteredCycle>(&terminal);
    return c ? &c->cycle : nullptr;
  }
};

struct IterationLimits {
  std::size_t step_limit = 100000;
  Integer magnitude_bound = Integer("1000000000000000000000000000000");
};

/// Iterates H from start, detecting the first revisited state. Divergent
/// orbits end as Escaped once |state| exceeds the bound.
Orbit iterate(const MapDef& def, const Integer& start, const IterationLimits& limits = {});

/// Rotates a cycle so it starts at its smallest-|value| member.
Cycle normalize_cycle(Cycle c);

/// True when the cycle contains x.
bool cycle_contains(const Cycle& c, const Integer& x);

/// Every cycle reached from a start in [lo, hi], deduplicated and ordered
/// by smallest member. Blocks of starts run on `threads` workers; the result
/// does not depend on the worker count.
std::vector<Cycle> survey_cycles(const MapDef& def, const Integer& lo, const Integer& hi,
                                 const IterationLimits& limits = {}, unsigned threads = 1);

struct CycleReport {
  std::uint64_t n = 0;
  bool unit_slope = false;      // M_H(n) = 1; x is not defined
  Rational x;                   // chi_H(B_rho(n))
  Integer D;                    // rho^lambda(n) - prod mu_j^#j(n)
  bool is_integer = false;
  bool verified = false;        // oracle confirmed x is periodic
  std::optional<Cycle> cycle;   // the oracle's cycle through x
  bool slope_less_than_one = false;
};

struct SearchOptions {
  IterationLimits limits;
  unsigned threads = 1;
  /// Allows semi-basic maps, for which integer hits need not be periodic.
  bool allow_semi_basic = false;
};

struct SearchSummary {
  std::uint64_t searched = 0;
  std::uint64_t unit_slope = 0;
  std::uint64_t integer_hits = 0;
  std::uint64_t verified = 0;
  std::uint64_t unverified_hits = 0;      // integer hits the oracle rejected
  std::uint64_t sign_law_violations = 0;  // integer x with (x > 0) != (M_H(n) < 1)
  bool map_is_basic = false;
  /// Every b_j >= 0, so chi_H(n) > 0 for n >= 1 and the sign law is checked.
  /// With a negative b_j the sign of x also follows the sign of chi_H(n).
  bool sign_law_applies = false;

  /// True when a basic map produced an unverified hit or a sign-law failure.
  bool soundness_violated() const { return map_is_basic && (unverified_hits != 0 || sign_law_violations != 0); }
};

struct SearchResult {
  std::vector<CycleReport> reports;  // ascending n
  SearchSummary summary;
};

/// For n in [1, n_max]: x = chi_H(B_rho(n)); integer x are checked against
/// the iteration oracle. Requires a basic map unless allow_semi_basic.
SearchResult correspondence_search(const MapDef& def, std::uint64_t n_max, const SearchOptions& opts = {});

struct Seed {
  Integer n;
  DigitString string;
  Integer member;  // the cycle member with chi_H(B_rho(n)) = member
};

/// Builds the branch string of the cycle read from x (last entry = x mod rho,
/// first entry = H^(|cycle|-1)(x) mod rho). If x = 0 mod rho the reading
/// starts at the first later member that is not, so `member` may differ
/// from x. Requires a basic map and |cycle| >= 2.
Seed cycle_to_seed(const MapDef& def, const Cycle& cycle, const Integer& x);

/// H_j(seed) when the first branch applied (the last entry of j) is not
/// seed mod rho; nullopt otherwise.
std::optional<Rational> wrong_value(const MapDef& def, const DigitString& j, const Integer& seed);

struct WrongValue {
  DigitString string;
  Integer seed;
  Rational value;
};

struct AuditReport {
  std::uint64_t strings = 0;
  std::uint64_t pairs = 0;
  std::uint64_t integer_wrong_values = 0;
  std::vector<WrongValue> samples;  // first few integer wrong values found
};

/// Every string with 1 <= |j| <= max_len against every seed |n| <= seed_bound
/// whose residue differs from the first branch applied.
AuditReport wrong_value_audit(const MapDef& def, unsigned max_len, std::uint64_t seed_bound,
                              std::size_t max_samples = 32);

/// rho^a - mu^b form of the cycle denominator, available when mu_0 = 1 and
/// every other mu_j is a power of one base mu.
struct PowerShape {
  Integer rho;
  unsigned long a = 0;
  Integer mu;
  unsigned long b = 0;
  /// a, b >= 2 and not {rho^a, mu^b} = {9, 8}: |D| = 1 is impossible.
  bool catalan_rules_out_unit = false;
};

/// |x^m - y_1^n_1 ... y_J^n_J| with x = rho and the y's the mu_j != 1
/// occurring in n.
struct GeneralShape {
  Integer x;
  unsigned long m = 0;
  std::vector<Integer> ys;
  std::vector<unsigned long> ns;
};

struct DenominatorAnalysis {
  Integer n;
  unsigned long lambda = 0;
  std::vector<unsigned long> exponents;  // #_{rho:j}(n)
  Integer numerator;                     // rho^lambda chi_H(n)
  Integer D;
  bool abs_D_is_one = false;
  bool divides_numerator = false;
  GeneralShape shape;
  std::optional<PowerShape> power_shape;
};

DenominatorAnalysis denominator_analysis(const MapDef& def, const Integer& n);

}  // namespace chih
