#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fracbvp::cli {

/// Exit codes: 0 ok, 2 invalid spec, 3 nonconvergence, 4 certificate
/// failure, 5 internal/quadrature error.
struct CommandOutcome {
    int exit_code;
    std::vector<std::string> artifacts; // files written
};

/// Run one subcommand (solve | certify | check | green) with its flags.
/// Normal output goes to `out`, diagnostics to `err`; every error path
/// prints one machine-parsable "CODE: detail" line to `err` first.
CommandOutcome run(const std::vector<std::string>& args, std::ostream& out,
                   std::ostream& err);

} // namespace fracbvp::cli
