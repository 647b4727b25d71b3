#include "doctest.h"
#include "support.hpp"

using namespace chih;

namespace {

// Brute-force inverse of a mod m.
std::uint64_t inverse_by_search(std::uint64_t a, std::uint64_t m) {
  for (std::uint64_t x = 0; x < m; ++x) {
    if (a * x % m == 1 % m) return x;
  }
  return m;
}

// Largest k with q^k | v, by repeated division.
unsigned long valuation_by_division(std::int64_t v, std::int64_t q) {
  unsigned long k = 0;
  while (v % q == 0) {
    v /= q;
    ++k;
  }
  return k;
}

Rational coprime_rational(support::Rng& rng, std::uint64_t q, std::int64_t bound) {
  for (;;) {
    Rational r = support::random_rational(rng, bound);
    if (std::gcd(static_cast<std::uint64_t>(r.den().get_ui()), q) == 1) return r;
  }
}

}  // namespace

TEST_CASE("rationals are kept reduced with a positive denominator") {
  const Rational r(Integer(6), Integer(-4));
  CHECK(r.num() == -3);
  CHECK(r.den() == 2);
  CHECK(Rational(Integer(0), Integer(-7)).den() == 1);
  CHECK(r.str() == "-3/2");
  CHECK(Rational(5).str() == "5");
  CHECK_THROWS_AS(Rational(Integer(1), Integer(0)), std::domain_error);
  CHECK_THROWS(Rational(1) / Rational(0));
  CHECK(Rational(Integer(1), Integer(3)) < Rational(Integer(1), Integer(2)));
}

TEST_CASE("nu_q examples") {
  CHECK(nu_q(Rational(0), 3).is_infinite());
  CHECK(nu_q(Rational(18), 3) == Valuation(2));
  CHECK(nu_q(Rational(Integer(3), Integer(4)), 3) == Valuation(1));
  CHECK(nu_q(Rational(Integer(1), Integer(2)), 3) == Valuation(0));
  CHECK_THROWS_AS(nu_q(Rational(Integer(1), Integer(6)), 3), DenominatorNotCoprime);
  CHECK_THROWS_AS(nu_q(Rational(Integer(1), Integer(4)), 6), DenominatorNotCoprime);
  CHECK(abs_q(Rational(18), 3) == doctest::Approx(1.0 / 9));
  CHECK(abs_q(Rational(0), 3) == 0.0);
}

TEST_CASE("nu_q agrees with repeated division") {
  support::Rng rng(11);
  for (int it = 0; it < 2000; ++it) {
    const std::int64_t q = support::uniform(rng, 2, 12);
    std::int64_t v = 0;
    while (v == 0) v = support::uniform(rng, -100000, 100000);
    CHECK(nu_q(Rational(v), static_cast<std::uint64_t>(q)) == Valuation(valuation_by_division(v, q)));
  }
}

TEST_CASE("nu_q is additive over products for prime q and superadditive otherwise") {
  support::Rng rng(12);
  for (int it = 0; it < 3000; ++it) {
    const std::int64_t x = support::uniform(rng, -5000, 5000), y = support::uniform(rng, -5000, 5000);
    for (std::uint64_t p : {2u, 3u, 5u, 7u}) {
      CHECK(nu_q(Rational(x * y), p) == nu_q(Rational(x), p) + nu_q(Rational(y), p));
    }
    for (std::uint64_t q : {4u, 6u, 10u, 12u}) {
      CHECK(nu_q(Rational(x * y), q) >= nu_q(Rational(x), q) + nu_q(Rational(y), q));
    }
  }
  // 2 * 3 is divisible by 6 although neither factor is.
  CHECK(nu_q(Rational(6), 6) == Valuation(1));
  CHECK(nu_q(Rational(2), 6) + nu_q(Rational(3), 6) == Valuation(0));
}

TEST_CASE("|.|_q is ultrametric on integers") {
  support::Rng rng(13);
  for (int it = 0; it < 3000; ++it) {
    const std::uint64_t q = static_cast<std::uint64_t>(support::uniform(rng, 2, 10));
    const Rational x(support::uniform(rng, -10000, 10000)), y(support::uniform(rng, -10000, 10000));
    CHECK(abs_q(x + y, q) <= std::max(abs_q(x, q), abs_q(y, q)));
  }
}

TEST_CASE("to_qadic examples") {
  CHECK(to_qadic(Rational(-1), 3, 2).residue() == 8);
  CHECK(to_qadic(Rational(-1), 3, 2).precision() == 2);
  const std::uint64_t inv2 = inverse_by_search(2, 9);
  CHECK(inv2 == 5);
  CHECK(to_qadic(Rational(Integer(1), Integer(2)), 3, 2).residue() == 5);
  CHECK(to_qadic(Rational(0), 5, 3).residue() == 0);
  CHECK(to_qadic(Rational(7), 3, 0).residue() == 0);
  CHECK_THROWS_AS(to_qadic(Rational(Integer(1), Integer(3)), 3, 2), NotQadicInteger);
  CHECK_THROWS_AS(to_qadic(Rational(Integer(1), Integer(2)), 6, 2), DenominatorNotCoprime);
}

TEST_CASE("to_qadic matches a brute-force inverse") {
  support::Rng rng(14);
  for (int it = 0; it < 500; ++it) {
    const std::uint64_t q = static_cast<std::uint64_t>(support::uniform(rng, 2, 7));
    const unsigned n = static_cast<unsigned>(support::uniform(rng, 1, 4));
    const Rational x = coprime_rational(rng, q, 200);
    std::uint64_t m = 1;
    for (unsigned k = 0; k < n; ++k) m *= q;
    const std::uint64_t den_mod = mod_floor(x.den(), Integer(static_cast<unsigned long>(m))).get_ui();
    const std::uint64_t num_mod = mod_floor(x.num(), Integer(static_cast<unsigned long>(m))).get_ui();
    const std::uint64_t expect = num_mod * inverse_by_search(den_mod, m) % m;
    CHECK(to_qadic(x, q, n).residue() == expect);
  }
}

TEST_CASE("qadic ring operations") {
  const QadicApprox m8(3, 2, Integer(8)), m1(3, 2, Integer(1));
  CHECK(qadic_add(m8, m1).residue() == 0);
  CHECK(qadic_add(m8, m1).precision() == 2);
  const QadicApprox x(3, 1, Integer(2));
  CHECK(qadic_mul(m8, x).precision() == 1);
  CHECK(qadic_mul(m8, x).residue() == 1);
  CHECK(qadic_mul(QadicApprox(3, 3, Integer(2)), QadicApprox(3, 3, Integer(2))).residue() == 4);
  CHECK(qadic_neg(m1).residue() == 8);
  CHECK(qadic_sub(m1, m8).residue() == 2);
  CHECK_THROWS_AS(qadic_add(m8, QadicApprox(2, 2, Integer(1))), BaseMismatch);
  CHECK(QadicApprox(3, 2, Integer(-1)).residue() == 8);
  CHECK(QadicApprox(3, 2, Integer(17)).truncate(1).residue() == 2);
  CHECK_THROWS(QadicApprox(3, 2, Integer(1)).truncate(3));
}

TEST_CASE("to_qadic is a ring homomorphism") {
  support::Rng rng(15);
  for (int it = 0; it < 3000; ++it) {
    const std::uint64_t q = static_cast<std::uint64_t>(support::uniform(rng, 2, 12));
    const unsigned n = static_cast<unsigned>(support::uniform(rng, 0, 8));
    const Rational x = coprime_rational(rng, q, 10000), y = coprime_rational(rng, q, 10000);
    CHECK(to_qadic(x * y, q, n) == qadic_mul(to_qadic(x, q, n), to_qadic(y, q, n)));
    CHECK(to_qadic(x + y, q, n) == qadic_add(to_qadic(x, q, n), to_qadic(y, q, n)));
    CHECK(to_qadic(x - y, q, n) == qadic_sub(to_qadic(x, q, n), to_qadic(y, q, n)));
  }
}

TEST_CASE("ipow and mod_floor") {
  CHECK(ipow(Integer(3), 0) == 1);
  CHECK(ipow(Integer(-2), 5) == -32);
  CHECK(mod_floor(Integer(-7), Integer(3)) == 2);
  CHECK(mod_floor(Integer(7), Integer(3)) == 1);
}
