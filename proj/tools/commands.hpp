#pragma once

#include <iosfwd>

namespace infoflow::cli {

/// Parses arguments, runs one subcommand and returns the process exit code
/// (0 success, 2 usage, 3 data, 4 numerical).
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace infoflow::cli
