#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace vortexbound::cli {

enum ExitCode { kOk = 0, kValidation = 2, kSolver = 3 };

// args excludes the program name. Data goes to out (or --out FILE), diagnostics to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

}  // namespace vortexbound::cli
