#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mixgap::tools {

/// Exit codes of `run`.
inline constexpr int kExitOk = 0;
inline constexpr int kExitIoOrParse = 1;
inline constexpr int kExitDomain = 2;

/// Entry point of the `mixgap` command. `args` excludes the program name.
/// Reports go to `out`; failures are written to `err` as a JSON object
/// {"error": CODE, "message": ...}.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace mixgap::tools
