#pragma once

// Law of chi_H mod q^n for a Haar-random rho-adic input, and its
// characteristic function.
//
// Convention: phi(k/q^n) = sum_m exp(-2 pi i k m / q^n) P(m), which makes
// phi(t) = (1/rho) sum_j exp(-2 pi i {b_j t / d_j}) phi(a_j t / d_j) hold.
// prob_from_phi uses the conjugate kernel.

#include <complex>
#include <cstdint>
#include <vector>

#include "chih/chi.hpp"

namespace chih {

struct ResidueDistribution {
  std::uint64_t q = 0;
  unsigned level = 0;
  std::vector<double> p;  // p[m] = P(chi_H = m mod q^level)

  std::uint64_t modulus() const { return p.size(); }
};

struct PhiTable {
  std::uint64_t q = 0;
  unsigned level = 0;
  std::vector<std::complex<double>> values;  // values[k] = phi(k / q^level)
};

/// q^level, throwing std::invalid_argument beyond 2^26 entries.
std::uint64_t level_modulus(std::uint64_t q, unsigned level);

/// One application of the transfer operator
/// (T pi)(m) = (1/rho) sum_j sum_{A_j(m') = m} pi(m'),
/// A_j(m) = d_j^-1 (a_j m + b_j) mod q^n.
ResidueDistribution transfer_step(const MapDef& def, const ResidueDistribution& pi);

struct StationaryResult {
  ResidueDistribution dist;
  std::size_t iterations = 0;  // for the run started from the uniform law
  double residual = 0;         // L1 change of the last step
  double agreement = 0;        // L1 distance to the run from a random start
};

/// Fixed point of the transfer operator, iterated from the uniform law and
/// from a seeded random law until each L1 step change is below tol. The two
/// runs must agree within 100 tol. Throws NoConvergence otherwise.
StationaryResult stationary_distribution(const MapDef& def, unsigned level, double tol = 1e-13,
                                         std::size_t max_iter = 1000000, std::uint64_t seed = 0x5eed);

/// Frequencies of chi_H(m) mod q^level over m in [0, rho^depth).
ResidueDistribution empirical_distribution(const MapDef& def, unsigned level, unsigned depth, unsigned threads = 1);

PhiTable phi_from_distribution(const ResidueDistribution& dist);
ResidueDistribution prob_from_phi(const PhiTable& phi);

/// max_k |phi(k/q^n) - (1/rho) sum_j exp(-2 pi i {b_j t/d_j}) phi(a_j t/d_j)|.
double functional_equation_residual(const MapDef& def, const PhiTable& phi);

struct ParsevalSides {
  double lhs = 0;  // (1/q^n) sum_k |phi_k|^2
  double rhs = 0;  // sum_m P(m)^2
};
ParsevalSides parseval_check(const ResidueDistribution& dist, const PhiTable& phi);

struct TruncatedPhi {
  std::complex<double> value;
  std::vector<Integer> skipped;  // m whose chi_H(m) has denominator divisible by p
};

/// (1/rho^N) sum_{m < rho^N} exp(-2 pi i {t chi_H(m)}_p) for t = k/p^n in
/// [0, 1). Terms with p in the denominator of chi_H(m) are left out of the
/// sum and listed in `skipped`.
TruncatedPhi phi_p_truncated(const MapDef& def, std::uint64_t p, const Rational& t, unsigned depth);

/// (1/2) sum |a - b|.
double total_variation(const ResidueDistribution& a, const ResidueDistribution& b);

/// Pushes a level-n law down to a lower level.
ResidueDistribution marginalize(const ResidueDistribution& dist, unsigned level);

}  // namespace chih
