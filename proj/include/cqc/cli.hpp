#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace cqc {

// Parses and executes one command-line invocation. Returns the process exit
// code: 0 success, 2 invalid input (usage errors, rejected parameters),
// 3 output I/O failure. All writing goes through the supplied streams so
// tests can run invocations in-process.
int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err);

// Convenience for tests: args without the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace cqc
