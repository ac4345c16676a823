#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace graphcomm::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntime = 1;
inline constexpr int kExitUsage = 2;

inline constexpr const char* kStoreEnv = "GRAPHCOMM_STORE";
inline constexpr const char* kPortEnv = "GRAPHCOMM_PORT";

// Runs one subcommand (ingest, detect, stats, query, serve). `args` excludes
// the program name. JSON results go to `out`, diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace graphcomm::cli
