#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cli/config.hpp"
#include "cli/output.hpp"

namespace qes::cli {

/// Pass thresholds of the validate task.
struct ValidationThresholds {
    long double residual = 1e-8L;
    long double slope = 2.0L;
    long double slope_tolerance = 0.2L;
    long double energy_relative = 1e-6L;
    int points = 10000;
};

struct TaskDocument {
    std::string task;
    json doc;
};

struct RunOutcome {
    int exit_code = kOk;
    std::vector<TaskDocument> documents;  // one per task that produced output
    std::optional<json> error;            // machine-readable error for stderr
};

/// Resolves auto mode: exact when the model is representable exactly, float otherwise.
ScalarMode resolve_mode(const RunConfig& config);

/// One result document: {schema_version, config, mode, task, model, results}.
/// Throws ConfigError, NotQESError and root-finding errors; a failed validation
/// sets results.passed = false instead of throwing.
json run_task(const RunConfig& config, const std::string& task, const ValidationThresholds& thresholds = {});

/// Runs every task, mapping failures to exit codes. A failed certification
/// still yields its document.
RunOutcome run(const RunConfig& config, const ValidationThresholds& thresholds = {});

/// Writes documents to config.output_path (one file per task, "<stem>.<task><ext>"
/// when there are several) or to stdout.
void emit(const RunConfig& config, const RunOutcome& outcome);

}  // namespace qes::cli
