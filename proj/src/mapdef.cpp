#include "chih/mapdef.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>

#include "json.hpp"

namespace chih {

namespace {

using i128 = __int128;

bool divides(i128 d, i128 x) { return x % d == 0; }

}  // namespace

MapDef::MapDef(unsigned rho, std::vector<Branch> branches) : rho_(rho), branches_(std::move(branches)) {
  if (rho_ < 2) throw MalformedDefinition("rho must be >= 2, got " + std::to_string(rho_));
  if (branches_.size() != rho_) {
    throw MalformedDefinition("expected " + std::to_string(rho_) + " branches, got " +
                              std::to_string(branches_.size()));
  }
  for (unsigned j = 0; j < rho_; ++j) {
    const Branch& br = branches_[j];
    if (br.a <= 0) throw MalformedDefinition("branches[" + std::to_string(j) + "].a must be >= 1");
    if (br.d <= 0) throw MalformedDefinition("branches[" + std::to_string(j) + "].d must be >= 1");
    mu_.emplace_back(Integer(static_cast<long>(rho_)) * Integer(static_cast<long>(br.a)),
                     Integer(static_cast<long>(br.d)));
  }
  flags_ = validate(*this);
  const bool any_nonunit = std::any_of(branches_.begin(), branches_.end(), [](const Branch& b) { return b.a != 1; });
  q_ = any_nonunit ? q_of(*this) : 0;
}

MapDef MapDef::t_a(std::int64_t a) { return MapDef(2, {{1, 0, 2}, {a, 1, 2}}); }

MapDef MapDef::collatz() { return MapDef(2, {{1, 0, 2}, {3, 1, 1}}); }

Integer MapDef::mu(unsigned j) const {
  const Rational& m = mu_.at(j);
  if (!m.is_integer()) throw MapRequirement("mu_" + std::to_string(j) + " = " + m.str() + " is not an integer");
  return m.num();
}

void MapDef::require_valid() const {
  if (!flags_.valid) throw MapRequirement("map is not valid");
}

void MapDef::require_fixes_zero() const {
  if (!flags_.fixes_zero) throw MapRequirement("map does not fix zero (b_0 != 0)");
}

void MapDef::require_semi_basic() const {
  require_valid();
  if (!flags_.semi_basic) throw MapRequirement("map is not semi-basic");
}

void MapDef::require_basic() const {
  require_valid();
  if (!flags_.basic) throw MapRequirement("map is not basic");
}

MapFlags validate(const MapDef& def) {
  MapFlags f;
  const unsigned rho = def.rho();
  const auto& br = def.branches();

  f.coprime = f.mu_integral = f.semi_simple = f.simple = true;
  f.non_degenerate = true;
  bool if_direction = true;
  f.integrality_only_if = true;
  for (unsigned j = 0; j < rho; ++j) {
    const i128 a = br[j].a, b = br[j].b, d = br[j].d;
    if (std::gcd(br[j].a, br[j].d) != 1) f.coprime = false;
    if (!divides(d, static_cast<i128>(rho) * a)) f.mu_integral = false;
    if (br[j].d != static_cast<std::int64_t>(rho)) f.simple = false;
    if (j != 0 && br[j].a == 1) f.non_degenerate = false;
    for (unsigned k = 0; k < rho; ++k) {
      if (std::gcd(br[j].a, br[k].d) != 1) f.semi_simple = false;
    }
    if (std::gcd(br[j].a, br[j].d) != 1 || !divides(d, static_cast<i128>(rho) * a)) {
      if_direction = false;
      continue;
    }
    // Here d | rho, and integrality of (a n + b)/d depends on n mod d, so
    // n in [0, rho*d) covers every residue of every class mod rho.
    const i128 span = static_cast<i128>(rho) * d;
    for (i128 n = 0; n < span; ++n) {
      const bool integral = divides(d, a * n + b);
      if (n % rho == j) {
        if (!integral) if_direction = false;
      } else if (integral) {
        f.integrality_only_if = false;
      }
    }
  }
  f.valid = f.coprime && f.mu_integral && if_direction;
  f.integrality_only_if = f.valid && f.integrality_only_if;
  f.fixes_zero = br[0].b == 0;

  std::int64_t g = 0;
  for (const Branch& b : br) {
    if (b.a != 1) g = std::gcd(g, b.a);
  }
  f.monogenic = g >= 2;
  f.semi_basic = f.fixes_zero && f.non_degenerate && f.monogenic && f.semi_simple;
  f.basic = f.fixes_zero && f.non_degenerate && f.monogenic && f.simple;
  return f;
}

std::uint64_t q_of(const MapDef& def) {
  std::int64_t g = 0;
  for (const Branch& b : def.branches()) {
    if (b.a != 1) g = std::gcd(g, b.a);
  }
  if (g == 0) throw AllCoefficientsOne("every a_j equals 1; q_H is undefined");
  return static_cast<std::uint64_t>(g);
}

Rational branch_eval(const MapDef& def, unsigned j, const Rational& x) {
  const Branch& b = def.branch(j);
  return (Rational(static_cast<long>(b.a)) * x + Rational(static_cast<long>(b.b))) /
         Rational(static_cast<long>(b.d));
}

unsigned residue_class(const Integer& n, unsigned rho) {
  return static_cast<unsigned>(mpz_fdiv_ui(n.get_mpz_t(), rho));
}

Integer apply(const MapDef& def, const Integer& n) {
  const unsigned j = residue_class(n, def.rho());
  const Branch& b = def.branch(j);
  Integer num = n * static_cast<long>(b.a) + static_cast<long>(b.b);
  if (!mpz_divisible_ui_p(num.get_mpz_t(), static_cast<unsigned long>(b.d))) {
    throw NonIntegerResult("H_" + std::to_string(j) + "(" + n.get_str() + ") is not an integer");
  }
  mpz_divexact_ui(num.get_mpz_t(), num.get_mpz_t(), static_cast<unsigned long>(b.d));
  return num;
}

namespace {

std::int64_t integer_field(const nlohmann::json& obj, const std::string& key, const std::string& path) {
  if (!obj.contains(key)) throw MalformedDefinition("missing field " + path + "." + key);
  const auto& v = obj.at(key);
  if (!v.is_number_integer()) throw MalformedDefinition("field " + path + "." + key + " must be an integer");
  if (v.is_number_unsigned() && v.get<std::uint64_t>() > static_cast<std::uint64_t>(INT64_MAX)) {
    throw MalformedDefinition("field " + path + "." + key + " is out of range");
  }
  return v.get<std::int64_t>();
}

}  // namespace

MapDef parse_map_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw MalformedDefinition(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw MalformedDefinition("top level must be an object");
  const std::int64_t rho = integer_field(doc, "rho", "$");
  if (rho < 2 || rho > 4096) throw MalformedDefinition("field $.rho must be in [2, 4096]");
  if (!doc.contains("branches") || !doc.at("branches").is_array()) {
    throw MalformedDefinition("field $.branches must be an array");
  }
  const auto& arr = doc.at("branches");
  if (arr.size() != static_cast<std::size_t>(rho)) {
    throw MalformedDefinition("field $.branches has " + std::to_string(arr.size()) + " entries, expected rho = " +
                              std::to_string(rho));
  }
  std::vector<Branch> branches;
  for (std::size_t j = 0; j < arr.size(); ++j) {
    const std::string path = "$.branches[" + std::to_string(j) + "]";
    if (!arr[j].is_object()) throw MalformedDefinition(path + " must be an object");
    branches.push_back({integer_field(arr[j], "a", path), integer_field(arr[j], "b", path),
                        integer_field(arr[j], "d", path)});
  }
  return MapDef(static_cast<unsigned>(rho), std::move(branches));
}

MapDef load_map_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw MalformedDefinition("cannot open map file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_map_json(ss.str());
}

std::string to_json(const MapDef& def) {
  nlohmann::json doc;
  doc["rho"] = def.rho();
  doc["branches"] = nlohmann::json::array();
  for (const Branch& b : def.branches()) doc["branches"].push_back({{"a", b.a}, {"b", b.b}, {"d", b.d}});
  return doc.dump();
}

}  // namespace chih
