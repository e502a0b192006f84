#pragma once

#include <string>
#include <vector>

namespace wild {

// Entry point behind the wildeuler binary. Exit status: 0 success,
// 1 verification failure, 2 configuration/usage error, 3 numerical failure
// (vacuum, blow-up, unattainable epsilon).
int dispatch(int argc, const char* const* argv);
int dispatch(const std::vector<std::string>& args);  // args without argv[0]

}  // namespace wild
