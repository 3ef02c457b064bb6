#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace srt::cli {

/// Exit codes of run().
inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitIo = 2;

/// Command-line driver. Results go to `out`, diagnostics and usage to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
/// Same, with args[0] taken as the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace srt::cli
