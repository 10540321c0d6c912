#pragma once

#include <iosfwd>

namespace evdom::cli {

/// Entry point of the evdom command line. Exit codes: 0 on success (any
/// definitive verdict for decide), 2 when decide cannot verify the
/// hypotheses, 1 on errors.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace evdom::cli
