#pragma once

#include <ostream>

namespace hasse::cli {

/// Exit codes: 0 success, 1 valid run with a negative answer (insoluble,
/// not everywhere soluble, nothing found, partial family list), 2 usage,
/// budget or I/O error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace hasse::cli
