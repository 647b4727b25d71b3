#pragma once

// CSV and JSON emission for the command-line front end. Fractions are
// reduced with the sign on the numerator; big integers go to JSON as
// decimal strings.

#include <iosfwd>
#include <optional>
#include <string>

#include "chih/cycles.hpp"
#include "chih/spectral.hpp"

namespace chih {

enum class Format { csv, json };

struct TableRow {
  Integer n;
  std::vector<unsigned long> counts;
  unsigned long lambda = 0;
  Rational chi;
  std::optional<Rational> chi_B;  // empty when M_H(n) = 1
};

TableRow table_row(const MapDef& def, const Integer& n);

void write_table(std::ostream& os, Format f, unsigned rho, const std::vector<TableRow>& rows);
void write_search(std::ostream& os, Format f, const SearchResult& r);
void write_audit(std::ostream& os, Format f, const AuditReport& r, unsigned max_len, std::uint64_t seed_bound);

struct SpectralReport {
  StationaryResult stationary;
  PhiTable phi;
  double fe_residual = 0;
  ParsevalSides parseval;
  double tol = 0;
  std::optional<ResidueDistribution> empirical;
  std::optional<unsigned> depth;
  double tv = 0;
};
void write_spectral(std::ostream& os, Format f, const SpectralReport& r);

void write_denominators(std::ostream& os, Format f, const std::vector<DenominatorAnalysis>& rows);

}  // namespace chih
