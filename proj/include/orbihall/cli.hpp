#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace orbihall::cli {

enum exit_code : int {
    ok = 0,
    validation_failure = 2,
    numerical_failure = 3,
    usage_failure = 64,
};

// Runs one command line (args excludes the program name). Results go to `out` unless
// --output names a directory, diagnostics and usage text go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run(int argc, const char* const* argv);

}  // namespace orbihall::cli
