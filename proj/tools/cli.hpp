#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lingua::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitRejected = 1;  // invalid corpus, rejected rule, no parse
inline constexpr int kExitUsage = 2;     // bad flags, missing input files

// `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lingua::cli
