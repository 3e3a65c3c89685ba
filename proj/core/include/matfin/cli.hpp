#pragma once

// The matfin command line: subcommands is-finite, order,
// element-order-finite and oracle, each printing one JSON object.
//
// Exit status: 0 when a result was produced, 1 for malformed input,
// 2 when a search or size limit was hit.

#include <ostream>
#include <string>
#include <vector>

namespace matfin {

enum ExitCode : int { kExitOk = 0, kExitInput = 1, kExitResource = 2 };

// args[0] is the program name. Trace lines (with --trace) go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace matfin
