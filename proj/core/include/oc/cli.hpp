#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace oc {

/// The command-line driver; args excludes the program name.  Returns 0 on
/// success, 1 on domain errors (including the zero result of psi), 2 on
/// usage or parse errors.  All output is deterministic.
int run_command(const std::vector<std::string>& args, std::ostream& out,
                std::ostream& err);

}  // namespace oc
