/// @file commands.hpp
/// @brief The four subcommands. Each returns the process exit code:
/// 0 pass, 1 check failure, 2 I/O or config error, 3 precondition violation.
#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "run_config.hpp"

namespace ns2d::cli {

enum ExitCode : int { kPass = 0, kCheckFailure = 1, kIoError = 2, kPrecondition = 3 };

/// Writes trajectory.csv, summary.json and optionally snapshots/ into config.out.
int cmd_simulate(const RunConfig& config, std::ostream& out, std::ostream& err);
/// Prints a table (or JSON/CSV with format) and writes verify.json when config.out is set.
int cmd_verify(const RunConfig& config, const std::string& suite, const std::string& format, std::ostream& out,
               std::ostream& err);
int cmd_classify(const RunConfig& config, std::ostream& out, std::ostream& err);
/// Writes export.<format> into config.out, or to out when no directory is given.
int cmd_export(const RunConfig& config, const std::filesystem::path& trajectory, const std::string& format,
               std::ostream& out, std::ostream& err);

/// Resolves the configured initial datum (recipe or binary file).
RealField initial_field(const RunConfig& config);

/// Simulation settings used by classify when the config leaves them unset.
SimConfig classification_settings(const RunConfig& config, const Grid& grid);

}  // namespace ns2d::cli
