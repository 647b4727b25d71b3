#include "chih/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "chih/report.hpp"
#include "json.hpp"

namespace chih {

namespace {

struct Config {
  std::string map_path;
  std::string map_inline;
  std::string out_path;
  std::string format = "csv";
  unsigned threads = 1;

  std::int64_t n_min = 0;
  std::int64_t n_max = 14;
  unsigned level = 2;
  unsigned depth = 0;
  double tol = 1e-13;
  std::size_t max_iter = 1000000;
  unsigned max_len = 12;
  std::uint64_t seed_bound = 200;
  std::size_t step_limit = 100000;
  bool allow_semi_basic = false;
};

class InputError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

MapDef load(const Config& c) {
  if (!c.map_inline.empty()) return parse_map_json(c.map_inline);
  if (c.map_path.empty()) throw InputError("one of --map or --map-json is required");
  return load_map_file(c.map_path);
}

Format format_of(const Config& c) { return c.format == "json" ? Format::json : Format::csv; }

std::string summary_line(const MapDef& def) {
  const MapFlags& f = def.flags();
  const std::string q = def.q_or_zero() ? ", q_H = " + std::to_string(def.q_or_zero()) : "";
  if (!f.valid) return "invalid";
  if (f.basic) return "basic" + q;
  std::string s = "valid";
  const std::pair<bool, const char*> props[] = {{f.simple, "simple"},
                                                {f.semi_simple, "semi-simple"},
                                                {f.fixes_zero, "fixing 0"},
                                                {f.non_degenerate, "non-degenerate"},
                                                {f.monogenic, "monogenic"}};
  for (const auto& [ok, name] : props) {
    if (!ok) s += std::string(", not ") + name;
  }
  if (f.semi_basic) s += ", semi-basic";
  return s + q;
}

int cmd_validate(const Config& c, std::ostream& out, std::ostream& err) {
  const MapDef def = load(c);
  const MapFlags& f = def.flags();
  const std::pair<const char*, bool> flags[] = {
      {"coprime", f.coprime},         {"mu_integral", f.mu_integral},
      {"valid", f.valid},             {"integrality_only_if", f.integrality_only_if},
      {"fixes_zero", f.fixes_zero},   {"non_degenerate", f.non_degenerate},
      {"monogenic", f.monogenic},     {"semi_simple", f.semi_simple},
      {"simple", f.simple},           {"semi_basic", f.semi_basic},
      {"basic", f.basic}};
  if (format_of(c) == Format::json) {
    nlohmann::ordered_json j;
    j["summary"] = summary_line(def);
    for (const auto& [name, v] : flags) j["flags"][name] = v;
    j["q_H"] = def.q_or_zero();
    j["mu"] = nlohmann::ordered_json::array();
    for (const auto& mu : def.mu_rational()) j["mu"].push_back(mu.str());
    out << j.dump(2) << '\n';
  } else {
    out << summary_line(def) << '\n';
    for (const auto& [name, v] : flags) out << name << ": " << (v ? "true" : "false") << '\n';
    out << "q_H: " << def.q_or_zero() << '\n';
    for (unsigned j = 0; j < def.rho(); ++j) out << "mu_" << j << ": " << def.mu_rational()[j].str() << '\n';
  }
  (void)err;
  return f.valid ? kOk : kFailure;
}

int cmd_table(const Config& c, std::ostream& out, std::ostream&) {
  const MapDef def = load(c);
  def.require_valid();
  def.require_fixes_zero();
  if (c.n_min < 0 || c.n_max < c.n_min) throw InputError("table needs 0 <= --n-min <= --n-max");
  std::vector<TableRow> rows;
  for (std::int64_t n = c.n_min; n <= c.n_max; ++n) rows.push_back(table_row(def, Integer(static_cast<long>(n))));
  write_table(out, format_of(c), def.rho(), rows);
  return kOk;
}

int cmd_search(const Config& c, std::ostream& out, std::ostream& err) {
  const MapDef def = load(c);
  if (c.n_max < 1) throw InputError("--n-max must be >= 1");
  SearchOptions opts;
  opts.threads = c.threads;
  opts.allow_semi_basic = c.allow_semi_basic;
  opts.limits.step_limit = c.step_limit;
  const SearchResult r = correspondence_search(def, static_cast<std::uint64_t>(c.n_max), opts);
  write_search(out, format_of(c), r);
  const auto& s = r.summary;
  err << "search: n <= " << c.n_max << ", integer hits " << s.integer_hits << ", verified " << s.verified
      << ", unverified " << s.unverified_hits << ", sign-law violations " << s.sign_law_violations
      << ", unit slope " << s.unit_slope << (s.map_is_basic ? "" : " (semi-basic map: periodicity not guaranteed)")
      << '\n';
  return s.soundness_violated() ? kInvariantViolation : kOk;
}

int cmd_spectral(const Config& c, std::ostream& out, std::ostream& err) {
  const MapDef def = load(c);
  SpectralReport r;
  r.tol = c.tol;
  r.stationary = stationary_distribution(def, c.level, c.tol, c.max_iter);
  r.phi = phi_from_distribution(r.stationary.dist);
  r.fe_residual = functional_equation_residual(def, r.phi);
  r.parseval = parseval_check(r.stationary.dist, r.phi);
  if (c.depth > 0) {
    r.depth = c.depth;
    r.empirical = empirical_distribution(def, c.level, c.depth, c.threads);
    r.tv = total_variation(r.stationary.dist, *r.empirical);
  }
  write_spectral(out, format_of(c), r);
  const double gap = std::abs(r.parseval.lhs - r.parseval.rhs);
  err << "spectral: level " << c.level << ", iterations " << r.stationary.iterations << ", residual "
      << r.stationary.residual << ", functional-equation residual " << r.fe_residual << ", Parseval gap " << gap;
  if (r.empirical) err << ", total variation vs depth " << c.depth << ' ' << r.tv;
  err << '\n';
  return (r.fe_residual < 1e-10 && gap < 1e-12) ? kOk : kInvariantViolation;
}

int cmd_audit(const Config& c, std::ostream& out, std::ostream& err) {
  const MapDef def = load(c);
  const AuditReport r = wrong_value_audit(def, c.max_len, c.seed_bound);
  write_audit(out, format_of(c), r, c.max_len, c.seed_bound);
  err << "audit: " << r.strings << " strings, " << r.pairs << " pairs, " << r.integer_wrong_values
      << " integer wrong values" << (def.flags().basic ? "" : " (map is not basic)") << '\n';
  return def.flags().basic && r.integer_wrong_values != 0 ? kInvariantViolation : kOk;
}

int cmd_denominators(const Config& c, std::ostream& out, std::ostream& err) {
  const MapDef def = load(c);
  const std::int64_t lo = std::max<std::int64_t>(1, c.n_min);
  if (c.n_max < lo) throw InputError("denominators needs --n-max >= max(1, --n-min)");
  std::vector<DenominatorAnalysis> rows;
  std::uint64_t violations = 0, unit = 0, divides = 0;
  for (std::int64_t n = lo; n <= c.n_max; ++n) {
    const Integer nz(static_cast<long>(n));
    DenominatorAnalysis a = denominator_analysis(def, nz);
    if (a.D != 0 && chi_B(def, nz) * Rational(a.D) != Rational(a.numerator)) ++violations;
    if (a.power_shape && a.power_shape->catalan_rules_out_unit && a.abs_D_is_one) ++violations;
    unit += a.abs_D_is_one;
    divides += a.divides_numerator;
    rows.push_back(std::move(a));
  }
  write_denominators(out, format_of(c), rows);
  err << "denominators: " << rows.size() << " rows, |D| = 1 for " << unit << ", D divides numerator for " << divides
      << ", violations " << violations << '\n';
  return violations ? kInvariantViolation : kOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Collatz-type map toolkit: chi_H tables, cycle search, audits, spectral checks", "chih"};
  app.require_subcommand(1);
  app.fallthrough();
  Config c;
  app.add_option("--map", c.map_path, "map definition file (JSON)");
  app.add_option("--map-json", c.map_inline, "inline map definition (JSON)");
  app.add_option("--out", c.out_path, "write the report here instead of stdout");
  app.add_option("--format", c.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--threads", c.threads, "worker threads")->check(CLI::Range(1u, 256u));

  auto* validate = app.add_subcommand("validate", "classify a map");
  auto* table = app.add_subcommand("table", "digit counts, chi_H(n) and chi_H(B_rho(n))");
  table->add_option("--n-min", c.n_min);
  table->add_option("--n-max", c.n_max);
  auto* search = app.add_subcommand("search", "integer values of chi_H(B_rho(n)) checked against iteration");
  search->add_option("--n-max", c.n_max)->required();
  search->add_option("--step-limit", c.step_limit);
  search->add_flag("--allow-semi-basic", c.allow_semi_basic);
  auto* spectral = app.add_subcommand("spectral", "law of chi_H mod q^level and its Fourier transform");
  spectral->add_option("--level", c.level);
  spectral->add_option("--depth", c.depth, "also compare with the empirical law over m < rho^depth");
  spectral->add_option("--tol", c.tol)->check(CLI::PositiveNumber);
  spectral->add_option("--max-iter", c.max_iter);
  auto* audit = app.add_subcommand("audit", "integer values of H_j(n) off the branch of n");
  audit->add_option("--max-len", c.max_len)->check(CLI::Range(1u, 30u));
  audit->add_option("--seed-bound", c.seed_bound);
  auto* denominators = app.add_subcommand("denominators", "rho^lambda - prod mu_j^#j for each n");
  denominators->add_option("--n-min", c.n_min);
  denominators->add_option("--n-max", c.n_max);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  std::ofstream file;
  if (!c.out_path.empty()) {
    file.open(c.out_path, std::ios::binary);
    if (!file) {
      err << "cannot open " << c.out_path << " for writing\n";
      return kInputError;
    }
  }
  std::ostream& sink = c.out_path.empty() ? out : file;

  const std::map<CLI::App*, int (*)(const Config&, std::ostream&, std::ostream&)> dispatch{
      {validate, cmd_validate}, {table, cmd_table},  {search, cmd_search},
      {spectral, cmd_spectral}, {audit, cmd_audit}, {denominators, cmd_denominators}};
  try {
    return dispatch.at(app.get_subcommands().front())(c, sink, err);
  } catch (const MalformedDefinition& e) {
    err << e.what() << '\n';
    return kInputError;
  } catch (const MapRequirement& e) {
    err << e.what() << '\n';
    return kInputError;
  } catch (const InputError& e) {
    err << e.what() << '\n';
    return kInputError;
  } catch (const std::invalid_argument& e) {
    err << e.what() << '\n';
    return kInputError;
  } catch (const std::logic_error& e) {
    err << "invariant violated: " << e.what() << '\n';
    return kInvariantViolation;
  } catch (const std::exception& e) {
    err << e.what() << '\n';
    return kFailure;
  }
}

}  // namespace chih
