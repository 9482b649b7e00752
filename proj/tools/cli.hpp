#pragma once

#include <ostream>

namespace fractree::cli {

// Parses argv and executes one subcommand. Returns 0 on success, 1 when a
// library check or validation fails (the error name goes to `err`), and 2
// on usage errors.
int run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err);

}  // namespace fractree::cli
