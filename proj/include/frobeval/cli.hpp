#ifndef FROBEVAL_CLI_HPP
#define FROBEVAL_CLI_HPP

#include <iosfwd>

namespace frobeval {

/// Full command-line front end (verify / cost / eval / bench). All normal
/// output goes to `out`, diagnostics to `err`. Returns the process exit
/// code: 0 success, 1 verification failure, 2 usage or parse error,
/// 3 numeric overflow.
int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err);

}  // namespace frobeval

#endif
