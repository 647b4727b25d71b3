#pragma once

// Command dispatch for the chih tool: validate, table, search, spectral,
// audit and denominators.
//
// Exit codes: 0 success, 1 computation failed or (validate) the map is not
// valid, 2 input error, 3 invariant violation.

#include <iosfwd>
#include <string>
#include <vector>

namespace chih {

enum ExitCode : int { kOk = 0, kFailure = 1, kInputError = 2, kInvariantViolation = 3 };

/// args excludes the program name. Reports go to `out` unless --out names a
/// file; summaries and diagnostics go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace chih
