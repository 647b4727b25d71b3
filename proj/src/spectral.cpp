#include "chih/spectral.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <thread>

namespace chih {

namespace {

constexpr std::uint64_t kMaxModulus = std::uint64_t{1} << 26;

double l1(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0;
  for (std::size_t k = 0; k < a.size(); ++k) s += std::fabs(a[k] - b[k]);
  return s;
}

// exp(-2 pi i r / Q) for r in [0, Q).
std::vector<std::complex<double>> unit_roots(std::uint64_t Q) {
  std::vector<std::complex<double>> w(Q);
  for (std::uint64_t r = 0; r < Q; ++r) {
    const double angle = -2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(Q);
    w[r] = {std::cos(angle), std::sin(angle)};
  }
  return w;
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

struct AffineMod {
  std::uint64_t slope, shift;  // m -> slope m + shift mod Q
};

// A_j(m) = d_j^-1 (a_j m + b_j) mod Q for every branch.
std::vector<AffineMod> branch_maps(const MapDef& def, std::uint64_t Q) {
  std::vector<AffineMod> out;
  const Integer mod(static_cast<unsigned long>(Q));
  for (const Branch& br : def.branches()) {
    Integer dinv;
    if (Q == 1) {
      dinv = 0;
    } else if (mpz_invert(dinv.get_mpz_t(), Integer(static_cast<long>(br.d)).get_mpz_t(), mod.get_mpz_t()) == 0) {
      throw MapRequirement("d = " + std::to_string(br.d) + " is not invertible mod " + std::to_string(Q));
    }
    const Integer slope = mod_floor(dinv * static_cast<long>(br.a), mod);
    const Integer shift = mod_floor(dinv * static_cast<long>(br.b), mod);
    out.push_back({slope.get_ui(), shift.get_ui()});
  }
  return out;
}

ResidueDistribution step_with(const std::vector<AffineMod>& maps, const ResidueDistribution& pi) {
  ResidueDistribution out{pi.q, pi.level, std::vector<double>(pi.p.size(), 0.0)};
  const std::uint64_t Q = pi.p.size();
  const double w = 1.0 / static_cast<double>(maps.size());
  for (const auto& A : maps) {
    for (std::uint64_t m = 0; m < Q; ++m) {
      if (pi.p[m] == 0.0) continue;
      out.p[(mulmod(A.slope, m, Q) + A.shift) % Q] += w * pi.p[m];
    }
  }
  return out;
}

struct RunResult {
  ResidueDistribution dist;
  std::size_t iterations;
  double residual;
};

RunResult run_to_fixed_point(const std::vector<AffineMod>& maps, ResidueDistribution pi, double tol,
                             std::size_t max_iter) {
  double change = 0;
  for (std::size_t it = 1; it <= max_iter; ++it) {
    ResidueDistribution next = step_with(maps, pi);
    change = l1(next.p, pi.p);
    pi = std::move(next);
    if (change < tol) return {std::move(pi), it, change};
  }
  throw NoConvergence("transfer operator: L1 change " + std::to_string(change) + " after " +
                      std::to_string(max_iter) + " iterations");
}

}  // namespace

std::uint64_t level_modulus(std::uint64_t q, unsigned level) {
  if (q < 2) throw std::invalid_argument("level_modulus: q must be >= 2");
  std::uint64_t Q = 1;
  for (unsigned k = 0; k < level; ++k) {
    if (Q > kMaxModulus / q) throw std::invalid_argument("q^level exceeds 2^26 residues");
    Q *= q;
  }
  return Q;
}

ResidueDistribution transfer_step(const MapDef& def, const ResidueDistribution& pi) {
  def.require_semi_basic();
  return step_with(branch_maps(def, pi.p.size()), pi);
}

StationaryResult stationary_distribution(const MapDef& def, unsigned level, double tol, std::size_t max_iter,
                                         std::uint64_t seed) {
  def.require_semi_basic();
  const std::uint64_t q = def.q_or_zero();
  const std::uint64_t Q = level_modulus(q, level);
  const auto maps = branch_maps(def, Q);

  ResidueDistribution uniform{q, level, std::vector<double>(Q, 1.0 / static_cast<double>(Q))};
  ResidueDistribution random{q, level, std::vector<double>(Q)};
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double total = 0;
  for (auto& v : random.p) total += (v = u(rng));
  for (auto& v : random.p) v /= total;

  RunResult a = run_to_fixed_point(maps, std::move(uniform), tol, max_iter);
  RunResult b = run_to_fixed_point(maps, std::move(random), tol, max_iter);
  StationaryResult out{std::move(a.dist), a.iterations, a.residual, l1(a.dist.p, b.dist.p)};
  if (out.agreement > 100 * tol) {
    throw NoConvergence("uniform and random starts disagree by " + std::to_string(out.agreement));
  }
  return out;
}

ResidueDistribution empirical_distribution(const MapDef& def, unsigned level, unsigned depth, unsigned threads) {
  def.require_semi_basic();
  const std::uint64_t q = def.q_or_zero();
  const std::uint64_t Q = level_modulus(q, level);
  const Integer count_z = ipow(Integer(def.rho()), depth);
  if (!count_z.fits_ulong_p() || count_z > Integer(1ul << 40)) {
    throw std::invalid_argument("empirical_distribution: rho^depth too large");
  }
  const std::uint64_t count = count_z.get_ui();
  threads = std::max(1u, threads);
  const std::uint64_t step = (count + threads - 1) / threads;

  std::vector<std::vector<std::uint64_t>> hist(threads, std::vector<std::uint64_t>(Q, 0));
  auto work = [&](unsigned t) {
    const std::uint64_t lo = std::min(count, t * step), hi = std::min(count, lo + step);
    for (std::uint64_t m = lo; m < hi; ++m) {
      const Rational chi = chi_of_n(def, Integer(static_cast<unsigned long>(m)));
      ++hist[t][to_qadic(chi, q, level).residue().get_ui()];
    }
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
    for (auto& th : pool) th.join();
  }
  ResidueDistribution out{q, level, std::vector<double>(Q, 0.0)};
  for (std::uint64_t r = 0; r < Q; ++r) {
    std::uint64_t c = 0;
    for (const auto& h : hist) c += h[r];
    out.p[r] = static_cast<double>(c) / static_cast<double>(count);
  }
  return out;
}

PhiTable phi_from_distribution(const ResidueDistribution& dist) {
  const std::uint64_t Q = dist.p.size();
  const auto w = unit_roots(Q);
  PhiTable phi{dist.q, dist.level, std::vector<std::complex<double>>(Q)};
  for (std::uint64_t k = 0; k < Q; ++k) {
    std::complex<double> s = 0;
    for (std::uint64_t m = 0; m < Q; ++m) s += w[mulmod(k, m, Q)] * dist.p[m];
    phi.values[k] = s;
  }
  return phi;
}

ResidueDistribution prob_from_phi(const PhiTable& phi) {
  const std::uint64_t Q = phi.values.size();
  const auto w = unit_roots(Q);
  ResidueDistribution dist{phi.q, phi.level, std::vector<double>(Q)};
  for (std::uint64_t m = 0; m < Q; ++m) {
    std::complex<double> s = 0;
    for (std::uint64_t k = 0; k < Q; ++k) s += std::conj(w[mulmod(k, m, Q)]) * phi.values[k];
    dist.p[m] = s.real() / static_cast<double>(Q);
  }
  return dist;
}

double functional_equation_residual(const MapDef& def, const PhiTable& phi) {
  def.require_semi_basic();
  const std::uint64_t Q = phi.values.size();
  if (Q <= 1) return Q == 1 ? std::abs(phi.values[0] - 1.0) : 0.0;
  const auto w = unit_roots(Q);
  const auto maps = branch_maps(def, Q);
  const double inv_rho = 1.0 / static_cast<double>(def.rho());
  double worst = 0;
  for (std::uint64_t k = 0; k < Q; ++k) {
    // t = k/Q: {b t/d} = (k b d^-1 mod Q)/Q and a t/d = (k a d^-1 mod Q)/Q.
    std::complex<double> rhs = 0;
    for (const auto& A : maps) rhs += w[mulmod(k, A.shift, Q)] * phi.values[mulmod(k, A.slope, Q)];
    worst = std::max(worst, std::abs(phi.values[k] - inv_rho * rhs));
  }
  return worst;
}

ParsevalSides parseval_check(const ResidueDistribution& dist, const PhiTable& phi) {
  if (dist.p.size() != phi.values.size()) throw std::invalid_argument("parseval_check: level mismatch");
  ParsevalSides s;
  for (const auto& v : phi.values) s.lhs += std::norm(v);
  s.lhs /= static_cast<double>(phi.values.size());
  for (double v : dist.p) s.rhs += v * v;
  return s;
}

TruncatedPhi phi_p_truncated(const MapDef& def, std::uint64_t p, const Rational& t, unsigned depth) {
  def.require_semi_basic();
  if (mpz_probab_prime_p(Integer(static_cast<unsigned long>(p)).get_mpz_t(), 30) == 0) {
    throw std::invalid_argument("phi_p_truncated: p = " + std::to_string(p) + " is not prime");
  }
  if (t.sign() < 0 || t >= Rational(1)) throw std::invalid_argument("phi_p_truncated: t must lie in [0, 1)");
  Integer den = t.den();
  unsigned level = 0;
  while (den != 1) {
    if (mpz_divisible_ui_p(den.get_mpz_t(), p) == 0) {
      throw std::invalid_argument("phi_p_truncated: t must have a power of p as denominator");
    }
    mpz_divexact_ui(den.get_mpz_t(), den.get_mpz_t(), p);
    ++level;
  }
  const Integer count_z = ipow(Integer(def.rho()), depth);
  if (!count_z.fits_ulong_p()) throw std::invalid_argument("phi_p_truncated: rho^depth too large");
  const std::uint64_t count = count_z.get_ui();
  const Integer P = ipow(Integer(static_cast<unsigned long>(p)), level);

  TruncatedPhi out;
  for (std::uint64_t m = 0; m < count; ++m) {
    const Integer mz(static_cast<unsigned long>(m));
    const Rational chi = chi_of_n(def, mz);
    if (mpz_divisible_ui_p(chi.den().get_mpz_t(), p) != 0) {
      out.skipped.push_back(mz);
      continue;
    }
    // {t chi}_p = (k chi mod p^n) / p^n
    const Integer r = level == 0 ? Integer(0) : mod_floor(t.num() * to_qadic(chi, p, level).residue(), P);
    const double angle = -2.0 * std::numbers::pi * Rational(r, P).to_double();
    out.value += std::complex<double>(std::cos(angle), std::sin(angle));
  }
  out.value /= static_cast<double>(count);
  return out;
}

double total_variation(const ResidueDistribution& a, const ResidueDistribution& b) {
  if (a.p.size() != b.p.size()) throw std::invalid_argument("total_variation: level mismatch");
  return 0.5 * l1(a.p, b.p);
}

ResidueDistribution marginalize(const ResidueDistribution& dist, unsigned level) {
  if (level > dist.level) throw std::invalid_argument("marginalize: target level above source level");
  const std::uint64_t Q = level_modulus(dist.q, level);
  ResidueDistribution out{dist.q, level, std::vector<double>(Q, 0.0)};
  for (std::uint64_t m = 0; m < dist.p.size(); ++m) out.p[m % Q] += dist.p[m];
  return out;
}

}  // namespace chih
