#pragma once

#include <filesystem>

#include "kawactrl/errors.hpp"
#include "kawactrl/harness/config.hpp"
#include "kawactrl/harness/record.hpp"

namespace kawactrl::harness {

enum ExitCode : int {
  kExitPass = 0,
  kExitToleranceFailure = 2,
  kExitInfeasible = 3,
  kExitBadConfig = 4,
};

// Each command reads its block of cfg.body, writes its artifacts under
// `out`, and fills checks and payload.  Errors propagate.
void cmd_simulate(const ExperimentConfig& cfg, const std::filesystem::path& out, RunRecord& rec);
void cmd_saturate(const ExperimentConfig& cfg, const std::filesystem::path& out, RunRecord& rec);
void cmd_decompose(const ExperimentConfig& cfg, const std::filesystem::path& out, RunRecord& rec);
void cmd_synthesize(const ExperimentConfig& cfg, const std::filesystem::path& out, RunRecord& rec);
void cmd_asymptotic(const ExperimentConfig& cfg, const std::filesystem::path& out, RunRecord& rec);
void cmd_necessity(const ExperimentConfig& cfg, const std::filesystem::path& out, RunRecord& rec);
void cmd_stability(const ExperimentConfig& cfg, const std::filesystem::path& out, RunRecord& rec);

// Runs the configured command, maps errors to exit codes and writes
// out/record.json.  Never throws for library errors.
RunRecord run_experiment(const ExperimentConfig& cfg, const std::filesystem::path& out);

int exit_code_for(ErrorKind kind) noexcept;

}  // namespace kawactrl::harness
