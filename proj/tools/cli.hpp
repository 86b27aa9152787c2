#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace fraclap::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitSelftestFailed = 1;
inline constexpr int kExitBadInput = 2;
inline constexpr int kExitNoConvergence = 3;
inline constexpr int kExitUnknownSubcommand = 64;

struct SubcommandInfo {
  std::string name;
  std::string summary;
  std::vector<std::string> operations;  // library entry points it drives
};

const std::vector<SubcommandInfo>& subcommands();

// Parses args (without the program name), runs the subcommand and writes its
// report to `out` or to the --out file. Diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fraclap::cli
