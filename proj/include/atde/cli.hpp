#pragma once

#include <ostream>

namespace atde {

/// Entry point of the `atde` command. Returns the process exit status.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace atde
