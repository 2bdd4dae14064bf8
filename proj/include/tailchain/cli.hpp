#ifndef TAILCHAIN_CLI_HPP
#define TAILCHAIN_CLI_HPP

#include <string>
#include <vector>

namespace tailchain {

/// Subcommands: simulate, estimate, mc-study, case-study, asymvar, verify.
/// Every subcommand echoes its resolved configuration (including derived
/// seeds) to a `.meta` sidecar next to its primary output.
/// Exit codes: 0 ok, 1 usage error, 2 data error, 3 numeric error.
int cli_dispatch(const std::vector<std::string>& argv);

} // namespace tailchain

#endif
