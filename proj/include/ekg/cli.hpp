#pragma once

#include <string>
#include <vector>

namespace ekg {

struct RunArtifacts {
    std::string diagnostics_csv_path;
    std::string snapshots_path;
    std::string report_path;
    int exit_code = 0;
};

enum ExitCode : int { exit_ok = 0, exit_degenerate = 2, exit_numerical = 3, exit_config = 4 };

// Executes one run; mode_override empty means the config's mode, output_dir empty means the config's.
RunArtifacts run(const std::string& config_path, const std::string& mode_override = "",
                 const std::string& output_dir = "");

// Entry point used by the command-line tool: <mode> --config <path> [--output-dir <path>].
int run_cli(int argc, char** argv);

} // namespace ekg
