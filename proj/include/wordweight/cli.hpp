#pragma once

#include <iosfwd>

namespace wordweight {

/// Entry point of the `wordweight` tool. Returns 0 on success, 1 on a
/// runtime or configuration error and 2 on a command-line usage error.
int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err);

}  // namespace wordweight
