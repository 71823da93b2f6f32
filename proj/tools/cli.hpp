#pragma once

#include <iosfwd>

namespace autgroup::cli {

/// Runs the command line tool. Exit codes: solve returns 0 accept, 1 reject,
/// 2 error; certify and selftest return 1 on a failed check; everything
/// else 0 on success and 2 on usage or input errors.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace autgroup::cli
