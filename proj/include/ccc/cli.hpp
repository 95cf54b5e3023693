#pragma once

// Batch command-line front end. run() is the whole program minus the
// process boundary, so tests can drive it in-process.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace ccc::cli {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitDomain = 2;

// Directory searched for bare input file names; CCC_DEMOS_DIR overrides.
std::string demos_dir();

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int dispatch(int argc, char** argv);

// Strips the leading envelope comment lines of a DOT report.
std::string dot_body(const std::string& dot_report);

}  // namespace ccc::cli
