#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace trickmc {

// Reported path count the enumeration summary is contrasted with.
inline constexpr std::size_t kReportedPathCount = 144;

// Entry point of the trickmc command line. `args` excludes the program name.
// Exit status: 0 verdict true / success, 1 verdict false / disagreement /
// mismatch, 2 usage or input error, 130 aborted interactive input.
int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace trickmc
