#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace sslab::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;  // capacity, domain, parse, io
inline constexpr int kExitUsage = 2;
inline constexpr int kExitViolation = 3;

// args excludes the program name. JSON lines go to `out`, the summary and
// diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sslab::cli
