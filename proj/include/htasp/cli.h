#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace htasp::cli {

enum ExitCode : int {
    Ok             = 0,
    Violations     = 1, //!< check-config found a problem with the instance
    Satisfiable    = 10,
    Unsatisfiable  = 20,
    UsageError     = 64,
    InputError     = 65,
};

//! Runs one command; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace htasp::cli
