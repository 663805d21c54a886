#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "run_config.hpp"

namespace qrm::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitNumerical = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitUncertified = 3;

struct ExecOptions {
  unsigned threads = 1;  // 0 = hardware concurrency
};

// Runs one configured command, writing to c.output_path or `out`. Returns
// kExitOk or kExitUncertified; failures propagate as exceptions.
int execute(const RunConfig& c, const ExecOptions& opts, std::ostream& out);

// Full command line (args[0] is the program name). Maps exceptions onto exit
// codes and reports them on `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qrm::cli
