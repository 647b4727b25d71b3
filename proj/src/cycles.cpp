#include "chih/cycles.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <thread>

namespace chih {

namespace {

Integer abs_of(const Integer& v) { return v < 0 ? Integer(-v) : v; }

// Splits [0, count) into `parts` contiguous blocks.
std::vector<std::pair<std::uint64_t, std::uint64_t>> blocks(std::uint64_t count, unsigned parts) {
  parts = std::max(1u, parts);
  std::vector<std::pair<std::uint64_t, std::uint64_t>> out;
  const std::uint64_t step = (count + parts - 1) / parts;
  for (std::uint64_t lo = 0; lo < count; lo += step) out.emplace_back(lo, std::min(count, lo + step));
  return out;
}

template <class Fn>
void run_blocks(std::uint64_t count, unsigned threads, Fn fn) {
  const auto bs = blocks(count, threads);
  if (bs.size() <= 1) {
    for (std::size_t b = 0; b < bs.size(); ++b) fn(b, bs[b].first, bs[b].second);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(bs.size());
  for (std::size_t b = 0; b < bs.size(); ++b) pool.emplace_back(fn, b, bs[b].first, bs[b].second);
  for (auto& t : pool) t.join();
}

// (r, e) with m = r^e and r minimal; m >= 2.
std::pair<Integer, unsigned long> minimal_root(const Integer& m) {
  const unsigned long bits = mpz_sizeinbase(m.get_mpz_t(), 2);
  for (unsigned long e = bits; e >= 2; --e) {
    Integer r;
    if (mpz_root(r.get_mpz_t(), m.get_mpz_t(), e) != 0) return {r, e};
  }
  return {m, 1};
}

}  // namespace

Cycle normalize_cycle(Cycle c) {
  if (c.empty()) return c;
  auto better = [](const Integer& x, const Integer& y) {
    const int k = cmp(abs_of(x), abs_of(y));
    return k < 0 || (k == 0 && x < y);
  };
  const auto it = std::min_element(c.begin(), c.end(), better);
  std::rotate(c.begin(), it, c.end());
  return c;
}

bool cycle_contains(const Cycle& c, const Integer& x) { return std::find(c.begin(), c.end(), x) != c.end(); }

Orbit iterate(const MapDef& def, const Integer& start, const IterationLimits& limits) {
  def.require_valid();
  Orbit o;
  o.start = start;
  std::map<Integer, std::size_t> seen;
  Integer s = start;
  for (std::size_t step = 0;; ++step) {
    if (abs_of(s) > limits.magnitude_bound) {
      o.states.push_back(s);
      o.terminal = Escaped{limits.magnitude_bound};
      return o;
    }
    const auto [it, fresh] = seen.emplace(s, o.states.size());
    if (!fresh) {
      Cycle c(o.states.begin() + static_cast<std::ptrdiff_t>(it->second), o.states.end());
      o.terminal = EnteredCycle{normalize_cycle(std::move(c))};
      return o;
    }
    o.states.push_back(s);
    if (step >= limits.step_limit) {
      o.terminal = StepLimit{};
      return o;
    }
    s = apply(def, s);
  }
}

std::vector<Cycle> survey_cycles(const MapDef& def, const Integer& lo, const Integer& hi,
                                 const IterationLimits& limits, unsigned threads) {
  def.require_valid();
  if (hi < lo) return {};
  const Integer span = hi - lo + 1;
  if (!span.fits_ulong_p()) throw std::invalid_argument("survey_cycles: range too large");
  const std::uint64_t count = span.get_ui();

  auto key = [](const Cycle& c) { return *std::min_element(c.begin(), c.end()); };
  std::vector<std::map<Integer, Cycle>> found(blocks(count, threads).size());
  run_blocks(count, threads, [&](std::size_t b, std::uint64_t first, std::uint64_t last) {
    auto& mine = found[b];
    for (std::uint64_t k = first; k < last; ++k) {
      const Orbit o = iterate(def, lo + Integer(static_cast<unsigned long>(k)), limits);
      if (const Cycle* c = o.cycle()) mine.emplace(key(*c), *c);
    }
  });
  // Cycles are disjoint, so the minimum member identifies the member set.
  std::map<Integer, Cycle> merged;
  for (auto& m : found) merged.insert(m.begin(), m.end());
  std::vector<Cycle> out;
  out.reserve(merged.size());
  for (auto& [k, c] : merged) out.push_back(std::move(c));
  return out;
}

SearchResult correspondence_search(const MapDef& def, std::uint64_t n_max, const SearchOptions& opts) {
  if (opts.allow_semi_basic) {
    def.require_semi_basic();
  } else {
    def.require_basic();
  }
  SearchResult result;
  result.summary.map_is_basic = def.flags().basic;
  if (n_max == 0) return result;

  const auto bs = blocks(n_max, opts.threads);
  std::vector<std::vector<CycleReport>> parts(bs.size());
  run_blocks(n_max, opts.threads, [&](std::size_t b, std::uint64_t first, std::uint64_t last) {
    std::map<Integer, std::optional<Cycle>> cache;
    auto& out = parts[b];
    out.reserve(last - first);
    for (std::uint64_t k = first; k < last; ++k) {
      CycleReport r;
      r.n = k + 1;
      const ScaledChi s = scaled_chi(def, Integer(static_cast<unsigned long>(r.n)));
      r.D = s.denominator;
      if (s.denominator == 0) {
        r.unit_slope = true;
        out.push_back(std::move(r));
        continue;
      }
      r.x = Rational(s.scaled, s.denominator);
      r.slope_less_than_one = s.denominator > 0;
      r.is_integer = r.x.is_integer();
      if (r.is_integer) {
        const Integer x = r.x.num();
        auto it = cache.find(x);
        if (it == cache.end()) {
          const Orbit o = iterate(def, x, opts.limits);
          std::optional<Cycle> c;
          if (o.cycle() && cycle_contains(*o.cycle(), x)) c = *o.cycle();
          it = cache.emplace(x, std::move(c)).first;
        }
        r.cycle = it->second;
        r.verified = r.cycle.has_value();
      }
      out.push_back(std::move(r));
    }
  });

  auto& sum = result.summary;
  sum.sign_law_applies = std::all_of(def.branches().begin(), def.branches().end(),
                                     [](const Branch& b) { return b.b >= 0; });
  for (auto& part : parts) {
    for (auto& r : part) {
      ++sum.searched;
      if (r.unit_slope) ++sum.unit_slope;
      if (r.is_integer) {
        ++sum.integer_hits;
        if (r.verified) {
          ++sum.verified;
        } else {
          ++sum.unverified_hits;
        }
        if (sum.sign_law_applies && (r.x.sign() > 0) != r.slope_less_than_one) ++sum.sign_law_violations;
      }
      result.reports.push_back(std::move(r));
    }
  }
  return result;
}

Seed cycle_to_seed(const MapDef& def, const Cycle& cycle, const Integer& x) {
  def.require_basic();
  if (cycle.size() < 2) throw std::invalid_argument("cycle_to_seed: cycle must have at least 2 members");
  if (!cycle_contains(cycle, x)) throw std::invalid_argument("cycle_to_seed: " + x.get_str() + " is not in the cycle");

  const std::size_t len = cycle.size();
  std::vector<Integer> orbit{x};
  for (std::size_t k = 1; k < len; ++k) orbit.push_back(apply(def, orbit.back()));
  if (apply(def, orbit.back()) != x) throw std::invalid_argument("cycle_to_seed: member list is not a cycle of H");

  // Start the reading at the first member whose residue is nonzero, so the
  // last string entry is nonzero and the string is the shortest one of n.
  const unsigned rho = def.rho();
  std::size_t r = 0;
  while (r < len && residue_class(orbit[r], rho) == 0) ++r;
  if (r == len) throw NoNonzeroDigit("every member of the cycle through " + x.get_str() + " is 0 mod rho");

  std::vector<unsigned> digits(len);
  for (std::size_t k = 0; k < len; ++k) digits[len - 1 - k] = residue_class(orbit[(r + k) % len], rho);
  Seed seed{0, DigitString(rho, std::move(digits)), orbit[r]};
  seed.n = from_string(seed.string);
  if (chi_B(def, seed.n) != Rational(seed.member)) {
    throw std::logic_error("cycle_to_seed: chi_B(" + seed.n.get_str() + ") != " + seed.member.get_str());
  }
  return seed;
}

std::optional<Rational> wrong_value(const MapDef& def, const DigitString& j, const Integer& seed) {
  if (j.empty()) throw std::invalid_argument("wrong_value: string must be nonempty");
  if (j[j.size() - 1] == residue_class(seed, def.rho())) return std::nullopt;
  return compose_eval(def, j, Rational(seed));
}

AuditReport wrong_value_audit(const MapDef& def, unsigned max_len, std::uint64_t seed_bound, std::size_t max_samples) {
  def.require_valid();
  const unsigned rho = def.rho();
  AuditReport rep;

  std::vector<Integer> seeds;
  for (std::int64_t s = -static_cast<std::int64_t>(seed_bound); s <= static_cast<std::int64_t>(seed_bound); ++s) {
    seeds.emplace_back(static_cast<long>(s));
  }
  std::vector<unsigned> residues;
  residues.reserve(seeds.size());
  for (const auto& s : seeds) residues.push_back(residue_class(s, rho));

  // H_j(n) = (A n + B) / C; prepending an outer branch i gives
  // (a_i A, a_i B + b_i C, d_i C).
  struct Node {
    std::vector<unsigned> digits;  // outermost first
    Integer A, B, C;
  };
  Integer value;
  std::vector<Node> stack;
  for (unsigned t = rho; t-- > 0;) {
    const Branch& br = def.branch(t);
    stack.push_back(Node{{t}, Integer(static_cast<long>(br.a)), Integer(static_cast<long>(br.b)),
                         Integer(static_cast<long>(br.d))});
  }
  while (!stack.empty()) {
    Node node = std::move(stack.back());
    stack.pop_back();
    ++rep.strings;
    const unsigned first_applied = node.digits.back();
    for (std::size_t k = 0; k < seeds.size(); ++k) {
      if (residues[k] == first_applied) continue;
      ++rep.pairs;
      value = node.A * seeds[k] + node.B;
      if (mpz_divisible_p(value.get_mpz_t(), node.C.get_mpz_t()) == 0) continue;
      ++rep.integer_wrong_values;
      if (rep.samples.size() < max_samples) {
        rep.samples.push_back(WrongValue{DigitString(rho, node.digits), seeds[k], Rational(value, node.C)});
      }
    }
    if (node.digits.size() >= max_len) continue;
    for (unsigned i = rho; i-- > 0;) {
      const Branch& br = def.branch(i);
      Node child;
      child.digits.reserve(node.digits.size() + 1);
      child.digits.push_back(i);
      child.digits.insert(child.digits.end(), node.digits.begin(), node.digits.end());
      child.A = node.A * static_cast<long>(br.a);
      child.B = node.B * static_cast<long>(br.a) + node.C * static_cast<long>(br.b);
      child.C = node.C * static_cast<long>(br.d);
      stack.push_back(std::move(child));
    }
  }
  return rep;
}

DenominatorAnalysis denominator_analysis(const MapDef& def, const Integer& n) {
  def.require_semi_basic();
  if (n < 1) throw std::invalid_argument("denominator_analysis: n must be >= 1");
  const unsigned rho = def.rho();
  DenominatorAnalysis an;
  an.n = n;
  an.lambda = lambda_rho(n, rho);
  an.exponents = digit_counts(n, rho);
  const ScaledChi s = scaled_chi(def, n);
  an.numerator = s.scaled;
  an.D = s.denominator;
  an.abs_D_is_one = abs_of(an.D) == 1;
  an.divides_numerator = an.D != 0 && mpz_divisible_p(an.numerator.get_mpz_t(), an.D.get_mpz_t()) != 0;

  an.shape.x = rho;
  an.shape.m = an.lambda;
  for (unsigned j = 0; j < rho; ++j) {
    const Integer mu = def.mu(j);
    if (mu == 1 || an.exponents[j] == 0) continue;
    an.shape.ys.push_back(mu);
    an.shape.ns.push_back(an.exponents[j]);
  }

  if (def.mu(0) == 1) {
    std::optional<Integer> base;
    std::vector<unsigned long> powers(rho, 0);
    bool common = true;
    for (unsigned j = 1; j < rho && common; ++j) {
      const Integer mu = def.mu(j);
      if (mu < 2) {
        common = false;
        break;
      }
      auto [r, e] = minimal_root(mu);
      if (base && *base != r) common = false;
      base = r;
      powers[j] = e;
    }
    if (common && base) {
      PowerShape ps;
      ps.rho = rho;
      ps.a = an.lambda;
      ps.mu = *base;
      for (unsigned j = 1; j < rho; ++j) ps.b += powers[j] * an.exponents[j];
      const Integer lhs = ipow(ps.rho, ps.a), rhs = ipow(ps.mu, ps.b);
      if (lhs - rhs != an.D) throw std::logic_error("denominator_analysis: power shape disagrees with D");
      const bool nine_eight = (lhs == 9 && rhs == 8) || (lhs == 8 && rhs == 9);
      ps.catalan_rules_out_unit = ps.a >= 2 && ps.b >= 2 && !nine_eight;
      an.power_shape = ps;
    }
  }
  return an;
}

}  // namespace chih
