#pragma once

#include "imc/cli/model_io.hpp"

#include <optional>
#include <string>

namespace imc::cli {

struct CommandOptions {
    std::string model_path;
    std::optional<std::string> gamble;
    std::optional<std::size_t> steps;
    std::optional<std::string> initial;
    std::optional<double> tol;
    std::optional<std::size_t> max_iter;
    std::optional<std::size_t> max_strong_states;
    /// Config file from IMC_CONFIG; flags override it.
    std::optional<std::string> config_path;
};

struct CommandResult {
    int exit_code = 0;
    std::string output; ///< JSON document for standard output, newline terminated
    std::string error;  ///< diagnostic for standard error
};

enum ExitCode : int {
    kExitOk = 0,
    kExitUsage = 1,
    kExitData = 2,
    kExitEmptyCredal = 3,
    kExitBudget = 4,
    kExitNonConvergent = 5,
};

int exit_code_for(ErrorKind kind);

const std::vector<std::string>& command_names();

/// Runs one command and never throws for model or numerical errors; those
/// are mapped to exit codes.
CommandResult run_command(const std::string& name, const CommandOptions& options);

} // namespace imc::cli
