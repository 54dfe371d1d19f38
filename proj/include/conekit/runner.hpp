#pragma once

#include <string>
#include <vector>

#include "conekit/config.hpp"
#include "conekit/report.hpp"

namespace conekit {

/// One batch invocation: a command, its configuration and output knobs.
struct RunConfig {
    std::string command;
    Config cfg;
    std::string out_dir = ".";
    unsigned seed = 1;
    bool seeded = false;  // seeded runs omit wall times so reports are byte-stable
    int workers = 1;
    bool emit_csv = false;
    bool emit_svg = false;
    std::vector<std::string> merge_paths;
};

struct RunOutcome {
    int exit_code = 0;  // 0 ok, 2 a computed check failed
    Json report;
    std::vector<std::string> artifacts;
};

/// Executes a command; throws on configuration or computation errors (the
/// CLI maps those to exit codes 64 and 1).
RunOutcome run_command(const RunConfig& rc);

/// Convenience wrapper for embedding: parse config text, run, write report.
int run_from_text(const std::string& command, const std::string& config_text,
                  const std::string& out_dir, unsigned seed = 0);

}  // namespace conekit
