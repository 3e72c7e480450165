#pragma once
// Command-line front end. Exit codes: 0 success (verification clean),
// 1 verification violations, 2 input error, 3 optimizer failure, 4 I/O error.

#include <iosfwd>
#include <string>
#include <vector>

namespace relay::cli {

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv);

}  // namespace relay::cli
