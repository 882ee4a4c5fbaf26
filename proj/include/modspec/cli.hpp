#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace modspec {

/// Runs the command line tool on `args` (without the program name).
/// Returns 0 when the command succeeds or the checked property holds,
/// 1 when the property fails, and 2 on usage, input or size errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace modspec
