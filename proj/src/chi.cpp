#include "chih/chi.hpp"

#include <stdexcept>

namespace chih {

namespace {

void check_base(const MapDef& def, const DigitString& j) {
  if (j.rho() != def.rho()) {
    throw BaseMismatch("string base " + std::to_string(j.rho()) + " vs map rho " + std::to_string(def.rho()));
  }
}

}  // namespace

Rational M_of_string(const MapDef& def, const DigitString& j) {
  def.require_valid();
  check_base(def, j);
  Integer num = 1, den = 1;
  for (unsigned d : j.digits()) {
    num *= static_cast<long>(def.branch(d).a);
    den *= static_cast<long>(def.branch(d).d);
  }
  return Rational(num, den);
}

Rational M_of_n(const MapDef& def, const Integer& n) {
  if (n == 0) return Rational(1);
  return M_of_string(def, to_string(n, def.rho()));
}

Rational chi_of_string(const MapDef& def, const DigitString& j) {
  def.require_valid();
  def.require_fixes_zero();
  check_base(def, j);
  // Keep the running sum over a common denominator, prod d_{j_k}.
  Integer sum = 0, prefix_a = 1, prefix_d = 1;
  for (unsigned d : j.digits()) {
    const Branch& br = def.branch(d);
    // sum/prefix_d + (b/d) prefix_a/prefix_d  over  prefix_d * d
    sum = sum * static_cast<long>(br.d) + prefix_a * static_cast<long>(br.b);
    prefix_a *= static_cast<long>(br.a);
    prefix_d *= static_cast<long>(br.d);
  }
  return Rational(sum, prefix_d);
}

Rational compose_eval(const MapDef& def, const DigitString& j, const Rational& x) {
  check_base(def, j);
  Rational v = x;
  for (auto it = j.digits().rbegin(); it != j.digits().rend(); ++it) v = branch_eval(def, *it, v);
  return v;
}

Rational chi_by_composition(const MapDef& def, const DigitString& j) {
  def.require_valid();
  def.require_fixes_zero();
  return compose_eval(def, j, Rational(0));
}

Rational chi_of_n(const MapDef& def, const Integer& n) {
  if (n < 0) throw std::invalid_argument("chi_of_n: n must be >= 0");
  if (n == 0) return Rational(0);
  return chi_of_string(def, to_string(n, def.rho()));
}

AffineForm affine_of_string(const MapDef& def, const DigitString& j) {
  return AffineForm{M_of_string(def, j), chi_of_string(def, j)};
}

ScaledChi scaled_chi(const MapDef& def, const DigitString& j) {
  def.require_valid();
  def.require_fixes_zero();
  check_base(def, j);
  const unsigned rho = def.rho();
  ScaledChi s;
  s.length = j.size();
  s.scaled = 0;
  // Prepending digit t to a string of length L:
  //   rho^(L+1) chi(t ^ j) = mu_t rho^L chi(j) + b_t (rho/d_t) rho^L
  Integer rho_pow = 1;
  for (auto it = j.digits().rbegin(); it != j.digits().rend(); ++it) {
    const Branch& br = def.branch(*it);
    const Integer mu = def.mu(*it);
    s.scaled = mu * s.scaled + rho_pow * (static_cast<long>(br.b) * static_cast<long>(rho / br.d));
    s.mu_product *= mu;
    rho_pow *= rho;
  }
  s.denominator = rho_pow - s.mu_product;
  return s;
}

ScaledChi scaled_chi(const MapDef& def, const Integer& n) { return scaled_chi(def, to_string(n, def.rho())); }

RhoAdicPoint RhoAdicPoint::integer(const Integer& n) {
  if (n < 0) throw std::invalid_argument("RhoAdicPoint::integer requires n >= 0; use rational() for negatives");
  RhoAdicPoint p;
  p.v_ = n;
  return p;
}

RhoAdicPoint RhoAdicPoint::rational(const Rational& x) {
  RhoAdicPoint p;
  p.v_ = x;
  return p;
}

RhoAdicPoint RhoAdicPoint::generator(Generator g) {
  RhoAdicPoint p;
  p.v_ = Gen{std::move(g)};
  return p;
}

bool RhoAdicPoint::is_nonnegative_integer() const {
  if (std::holds_alternative<Integer>(v_)) return true;
  if (const auto* r = std::get_if<Rational>(&v_)) return r->is_integer() && r->sign() >= 0;
  return false;
}

Integer RhoAdicPoint::as_integer() const {
  if (const auto* n = std::get_if<Integer>(&v_)) return *n;
  if (const auto* r = std::get_if<Rational>(&v_); r && r->is_integer() && r->sign() >= 0) return r->num();
  throw std::logic_error("RhoAdicPoint is not a non-negative integer");
}

DigitStream::DigitStream(const RhoAdicPoint& z, unsigned rho) : rho_(rho) {
  if (rho < 2) throw std::invalid_argument("DigitStream: rho must be >= 2");
  if (const auto* n = std::get_if<Integer>(&z.v_)) {
    num_ = *n;
    den_ = 1;
  } else if (const auto* r = std::get_if<Rational>(&z.v_)) {
    num_ = r->num();
    den_ = r->den();
    Integer g;
    const Integer rr(rho);
    mpz_gcd(g.get_mpz_t(), den_.get_mpz_t(), rr.get_mpz_t());
    if (g != 1) throw DenominatorNotCoprime(r->str() + " is not a " + std::to_string(rho) + "-adic integer");
  } else {
    gen_ = std::get<RhoAdicPoint::Gen>(z.v_).g;
  }
}

unsigned DigitStream::next() {
  if (gen_) {
    const unsigned d = gen_(index_++);
    if (d >= rho_) throw std::out_of_range("digit generator produced " + std::to_string(d));
    return d;
  }
  ++index_;
  // d = num * den^-1 mod rho, then z <- (z - d) / rho.
  const Integer rr(rho_);
  Integer inv;
  mpz_invert(inv.get_mpz_t(), den_.get_mpz_t(), rr.get_mpz_t());
  const Integer d = mod_floor(num_ * inv, rr);
  num_ -= d * den_;
  mpz_divexact_ui(num_.get_mpz_t(), num_.get_mpz_t(), rho_);
  return static_cast<unsigned>(d.get_ui());
}

DigitString truncate_point(const RhoAdicPoint& z, unsigned rho, std::size_t m) {
  DigitStream s(z, rho);
  std::vector<unsigned> out(m);
  for (auto& d : out) d = s.next();
  return DigitString(rho, std::move(out));
}

Rational chi_truncated(const MapDef& def, const RhoAdicPoint& z, std::size_t m) {
  def.require_semi_basic();
  return chi_of_string(def, truncate_point(z, def.rho(), m));
}

QadicApprox chi_qadic(const MapDef& def, const RhoAdicPoint& z, unsigned precision, std::size_t digit_budget) {
  def.require_semi_basic();
  const std::uint64_t q = def.q_or_zero();
  if (z.is_nonnegative_integer()) return to_qadic(chi_of_n(def, z.as_integer()), q, precision);

  DigitStream s(z, def.rho());
  std::vector<unsigned> digits;
  unsigned nonzero = 0;
  while (nonzero < precision) {
    if (digits.size() >= digit_budget) {
      throw PrecisionUnreachable("only " + std::to_string(nonzero) + " nonzero digits within " +
                                 std::to_string(digit_budget) + " digits");
    }
    const unsigned d = s.next();
    digits.push_back(d);
    if (d != 0) ++nonzero;
  }
  return to_qadic(chi_of_string(def, DigitString(def.rho(), std::move(digits))), q, precision);
}

Rational chi_B(const MapDef& def, const Integer& n) {
  def.require_semi_basic();
  if (n < 1) throw std::invalid_argument("chi_B: n must be >= 1");
  const DigitString j = to_string(n, def.rho());
  const Rational m = M_of_string(def, j);
  if (m == Rational(1)) throw UnitSlope("M_H(" + n.get_str() + ") = 1");
  const Rational quotient = chi_of_string(def, j) / (Rational(1) - m);

  const ScaledChi s = scaled_chi(def, j);
  if (Rational(s.scaled, s.denominator) != quotient) {
    throw std::logic_error("chi_B routes disagree at n = " + n.get_str());
  }
  return quotient;
}

Rational x_of_string(const MapDef& def, const DigitString& j) {
  def.require_basic();
  if (j.empty()) throw std::invalid_argument("x_of_string: string must be nonempty");
  const ScaledChi s = scaled_chi(def, j);
  if (s.denominator == 0) throw UnitSlope("rho^|j| = prod mu for j = " + j.str());
  const Rational x(s.scaled, s.denominator);
  if (affine_of_string(def, j)(x) != x) throw std::logic_error("x_of_string: not a fixed point for j = " + j.str());
  return x;
}

}  // namespace chih
