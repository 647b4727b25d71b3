#include "chih/report.hpp"

#include <cstdio>
#include <ostream>

#include "json.hpp"

namespace chih {

namespace {

using json = nlohmann::ordered_json;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

const char* flag(bool b) { return b ? "true" : "false"; }

json fraction(const Rational& r) { return json{{"num", r.num().get_str()}, {"den", r.den().get_str()}}; }

json cycle_json(const Cycle& c) {
  json a = json::array();
  for (const auto& v : c) a.push_back(v.get_str());
  return a;
}

}  // namespace

TableRow table_row(const MapDef& def, const Integer& n) {
  TableRow row;
  row.n = n;
  row.counts = digit_counts(n, def.rho());
  row.lambda = lambda_rho(n, def.rho());
  row.chi = chi_of_n(def, n);
  if (n == 0) {
    row.chi_B = Rational(0);
  } else {
    try {
      row.chi_B = chi_B(def, n);
    } catch (const UnitSlope&) {
    }
  }
  return row;
}

void write_table(std::ostream& os, Format f, unsigned rho, const std::vector<TableRow>& rows) {
  if (f == Format::json) {
    json out = json::array();
    for (const auto& r : rows) {
      json j{{"n", r.n.get_str()}, {"counts", r.counts}, {"lambda", r.lambda}, {"chi", fraction(r.chi)}};
      j["chi_B"] = r.chi_B ? fraction(*r.chi_B) : json(nullptr);
      j["chi_B_is_integer"] = r.chi_B && r.chi_B->is_integer();
      out.push_back(std::move(j));
    }
    os << out.dump(2) << '\n';
    return;
  }
  os << "n";
  for (unsigned k = 0; k < rho; ++k) os << ",count_" << k;
  os << ",lambda,chi_num,chi_den,chiB_num,chiB_den,chiB_is_integer\n";
  for (const auto& r : rows) {
    os << r.n.get_str();
    for (auto c : r.counts) os << ',' << c;
    os << ',' << r.lambda << ',' << r.chi.num().get_str() << ',' << r.chi.den().get_str() << ',';
    if (r.chi_B) {
      os << r.chi_B->num().get_str() << ',' << r.chi_B->den().get_str() << ',' << flag(r.chi_B->is_integer());
    } else {
      os << ",,false";
    }
    os << '\n';
  }
}

void write_search(std::ostream& os, Format f, const SearchResult& r) {
  if (f == Format::json) {
    json reports = json::array();
    for (const auto& c : r.reports) {
      json j{{"n", c.n}};
      j["x"] = c.unit_slope ? json(nullptr) : fraction(c.x);
      j["is_integer"] = c.is_integer;
      j["verified"] = c.verified;
      j["cycle"] = c.cycle ? cycle_json(*c.cycle) : json(nullptr);
      j["slope_less_than_one"] = c.slope_less_than_one;
      j["D"] = c.D.get_str();
      j["abs_D_is_one"] = abs(c.D) == 1;
      reports.push_back(std::move(j));
    }
    const auto& s = r.summary;
    json out{{"summary",
              {{"searched", s.searched},
               {"unit_slope", s.unit_slope},
               {"integer_hits", s.integer_hits},
               {"verified", s.verified},
               {"unverified_hits", s.unverified_hits},
               {"sign_law_violations", s.sign_law_violations},
               {"sign_law_applies", s.sign_law_applies},
               {"map_is_basic", s.map_is_basic}}},
             {"reports", std::move(reports)}};
    os << out.dump(2) << '\n';
    return;
  }
  os << "n,x_num,x_den,is_integer,verified,cycle_min,cycle_len,D,abs_D_is_one\n";
  for (const auto& c : r.reports) {
    os << c.n << ',';
    if (!c.unit_slope) os << c.x.num().get_str() << ',' << c.x.den().get_str();
    else os << ',';
    os << ',' << flag(c.is_integer) << ',' << flag(c.verified) << ',';
    if (c.cycle) os << c.cycle->front().get_str() << ',' << c.cycle->size();
    else os << ',';
    os << ',' << c.D.get_str() << ',' << flag(abs(c.D) == 1) << '\n';
  }
}

void write_audit(std::ostream& os, Format f, const AuditReport& r, unsigned max_len, std::uint64_t seed_bound) {
  if (f == Format::json) {
    json samples = json::array();
    for (const auto& w : r.samples) {
      samples.push_back(json{{"string", w.string.str()}, {"seed", w.seed.get_str()}, {"value", w.value.str()}});
    }
    json out{{"max_len", max_len},
             {"seed_bound", seed_bound},
             {"strings", r.strings},
             {"pairs", r.pairs},
             {"integer_wrong_values", r.integer_wrong_values},
             {"samples", std::move(samples)}};
    os << out.dump(2) << '\n';
    return;
  }
  os << "string,seed,value\n";
  for (const auto& w : r.samples) os << '"' << w.string.str() << "\"," << w.seed.get_str() << ',' << w.value.str() << '\n';
}

void write_spectral(std::ostream& os, Format f, const SpectralReport& r) {
  const auto& dist = r.stationary.dist;
  if (f == Format::json) {
    json p = json::array(), phi = json::array();
    for (double v : dist.p) p.push_back(v);
    for (const auto& v : r.phi.values) phi.push_back(json{{"re", v.real()}, {"im", v.imag()}});
    json meta{{"q", dist.q},
              {"level", dist.level},
              {"tol", r.tol},
              {"iterations", r.stationary.iterations},
              {"residual", r.stationary.residual},
              {"agreement", r.stationary.agreement},
              {"fe_residual", r.fe_residual},
              {"parseval_lhs", r.parseval.lhs},
              {"parseval_rhs", r.parseval.rhs}};
    if (r.empirical) {
      meta["depth"] = *r.depth;
      meta["total_variation"] = r.tv;
    }
    json out{{"meta", std::move(meta)}, {"distribution", std::move(p)}, {"phi", std::move(phi)}};
    if (r.empirical) {
      json e = json::array();
      for (double v : r.empirical->p) e.push_back(v);
      out["empirical"] = std::move(e);
    }
    os << out.dump(2) << '\n';
    return;
  }
  os << "# q=" << dist.q << " level=" << dist.level << " tol=" << num(r.tol)
     << " iterations=" << r.stationary.iterations << " residual=" << num(r.stationary.residual)
     << " fe_residual=" << num(r.fe_residual) << " parseval_lhs=" << num(r.parseval.lhs)
     << " parseval_rhs=" << num(r.parseval.rhs);
  if (r.empirical) os << " depth=" << *r.depth << " total_variation=" << num(r.tv);
  os << '\n';
  os << "index,probability,phi_re,phi_im";
  if (r.empirical) os << ",empirical";
  os << '\n';
  for (std::size_t k = 0; k < dist.p.size(); ++k) {
    os << k << ',' << num(dist.p[k]) << ',' << num(r.phi.values[k].real()) << ',' << num(r.phi.values[k].imag());
    if (r.empirical) os << ',' << num(r.empirical->p[k]);
    os << '\n';
  }
}

void write_denominators(std::ostream& os, Format f, const std::vector<DenominatorAnalysis>& rows) {
  if (f == Format::json) {
    json out = json::array();
    for (const auto& a : rows) {
      json ys = json::array();
      for (const auto& y : a.shape.ys) ys.push_back(y.get_str());
      json j{{"n", a.n.get_str()},
             {"lambda", a.lambda},
             {"exponents", a.exponents},
             {"numerator", a.numerator.get_str()},
             {"D", a.D.get_str()},
             {"abs_D_is_one", a.abs_D_is_one},
             {"divides_numerator", a.divides_numerator},
             {"shape", {{"x", a.shape.x.get_str()}, {"m", a.shape.m}, {"ys", std::move(ys)}, {"ns", a.shape.ns}}}};
      if (a.power_shape) {
        const auto& ps = *a.power_shape;
        j["power_shape"] = json{{"rho", ps.rho.get_str()},
                                {"a", ps.a},
                                {"mu", ps.mu.get_str()},
                                {"b", ps.b},
                                {"catalan_rules_out_unit", ps.catalan_rules_out_unit}};
      } else {
        j["power_shape"] = nullptr;
      }
      out.push_back(std::move(j));
    }
    os << out.dump(2) << '\n';
    return;
  }
  os << "n,lambda,numerator,D,abs_D_is_one,divides_numerator,power_a,power_mu,power_b,catalan_rules_out_unit\n";
  for (const auto& a : rows) {
    os << a.n.get_str() << ',' << a.lambda << ',' << a.numerator.get_str() << ',' << a.D.get_str() << ','
       << flag(a.abs_D_is_one) << ',' << flag(a.divides_numerator) << ',';
    if (a.power_shape) {
      const auto& ps = *a.power_shape;
      os << ps.a << ',' << ps.mu.get_str() << ',' << ps.b << ',' << flag(ps.catalan_rules_out_unit);
    } else {
      os << ",,,";
    }
    os << '\n';
  }
}

}  // namespace chih
