#pragma once

#include <iosfwd>

namespace nsm::cli {

/// Entry point of the `nsm` tool. CSV goes to --out or `out`; the config
/// echo and diagnostics go to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace nsm::cli
