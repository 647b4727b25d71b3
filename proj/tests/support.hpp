#pragma once

// Seeded generators and small independent oracles shared by the unit tests.

#include <numeric>
#include <random>

#include "chih/chi.hpp"

namespace support {

using Rng = std::mt19937_64;

inline std::int64_t uniform(Rng& rng, std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

inline chih::DigitString random_string(Rng& rng, unsigned rho, std::size_t min_len, std::size_t max_len) {
  std::vector<unsigned> d(static_cast<std::size_t>(uniform(rng, static_cast<std::int64_t>(min_len),
                                                           static_cast<std::int64_t>(max_len))));
  for (auto& x : d) x = static_cast<unsigned>(uniform(rng, 0, rho - 1));
  return chih::DigitString(rho, std::move(d));
}

inline chih::Rational random_rational(Rng& rng, std::int64_t bound) {
  return chih::Rational(chih::Integer(static_cast<long>(uniform(rng, -bound, bound))),
                        chih::Integer(static_cast<long>(uniform(rng, 1, bound))));
}

inline std::int64_t gcd64(std::int64_t a, std::int64_t b) { return std::gcd(a, b); }

/// A random semi-basic map; with `simple`, every d_j = rho (so the map is
/// basic). Slopes are multiples of a prime q coprime to rho.
inline chih::MapDef random_semi_basic(Rng& rng, bool simple) {
  static const std::int64_t primes[] = {2, 3, 5, 7, 11, 13};
  const unsigned rho = static_cast<unsigned>(uniform(rng, 2, 5));
  std::int64_t q;
  do {
    q = primes[uniform(rng, 0, 5)];
  } while (gcd64(q, rho) != 1);
  std::vector<std::int64_t> divisors;
  for (std::int64_t d = 1; d <= rho; ++d) {
    if (rho % d == 0) divisors.push_back(d);
  }
  std::vector<chih::Branch> br(rho);
  for (unsigned j = 0; j < rho; ++j) {
    const std::int64_t d = simple ? rho : divisors[uniform(rng, 0, static_cast<std::int64_t>(divisors.size()) - 1)];
    std::int64_t k;
    do {
      k = uniform(rng, 1, 4);
    } while (gcd64(k, rho) != 1);
    const std::int64_t a = (j == 0 && uniform(rng, 0, 1) == 0) ? 1 : q * k;
    // b = -a j mod d plus a multiple of d, so d | a n + b whenever n = j mod rho.
    std::int64_t b = 0;
    if (j != 0) b = ((-a * j) % d + d) % d + d * uniform(rng, -2, 2);
    br[j] = {a, b, d};
  }
  return chih::MapDef(rho, br);
}

/// H_{j_1} o ... o H_{j_L}(x) over __int128 fractions, independent of the
/// library's rational type. Inputs must keep numbers small.
struct Frac {
  __int128 num = 0, den = 1;
};

inline __int128 gcd128(__int128 a, __int128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    const __int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

inline Frac reduce(Frac f) {
  if (f.den < 0) {
    f.num = -f.num;
    f.den = -f.den;
  }
  const __int128 g = gcd128(f.num, f.den);
  if (g > 1) {
    f.num /= g;
    f.den /= g;
  }
  return f;
}

inline Frac literal_compose(const chih::MapDef& def, const chih::DigitString& j, Frac x) {
  for (std::size_t k = j.size(); k-- > 0;) {
    const chih::Branch& b = def.branch(j[k]);
    x = reduce(Frac{b.a * x.num + b.b * x.den, b.d * x.den});
  }
  return x;
}

inline chih::Integer to_integer(__int128 v) {
  const bool neg = v < 0;
  unsigned __int128 u = neg ? static_cast<unsigned __int128>(-v) : static_cast<unsigned __int128>(v);
  chih::Integer out = 0;
  chih::Integer scale = 1;
  while (u != 0) {
    out += scale * static_cast<unsigned long>(u % 1000000000u);
    scale *= 1000000000u;
    u /= 1000000000u;
  }
  return neg ? chih::Integer(-out) : out;
}

inline chih::Rational to_rational(const Frac& f) { return chih::Rational(to_integer(f.num), to_integer(f.den)); }

}  // namespace support
