#pragma once

// Run configuration: one model block, a scalar mode and a task list.

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "qes/coulomb.hpp"
#include "qes/models.hpp"
#include "qes/scalar.hpp"

namespace qes::cli {

inline constexpr int kSchemaVersion = 1;

enum ExitCode : int { kOk = 0, kConfigError = 2, kNotQES = 3, kCertificationFailure = 4 };

class ConfigError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// A numerical check (root count, residual, shooting) failed.
class CertificationFailure : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

enum class ModeChoice { automatic, exact, floating };

struct RunConfig {
    std::string model;  // calogero_marchioro | novel_correlation | calogero_sutherland | reduced | coulomb
    /// Raw parameter text ("p/q", integers or decimals), keyed by name.
    std::map<std::string, std::string> params;
    ModeChoice mode = ModeChoice::automatic;
    unsigned bits = kDefaultFloatBits;
    std::vector<std::string> tasks;
    int n_max = 6;
    std::optional<std::string> output_path;
    std::string output_format = "json";
};

const std::vector<std::string>& model_kinds();
const std::vector<std::string>& task_names();
/// Parameters the model block accepts; `required` gets the mandatory subset.
std::vector<std::string> allowed_params(const std::string& model, std::vector<std::string>* required = nullptr);

/// Throws ConfigError on unknown kinds, unknown or missing parameters,
/// B and J both or neither given, or tasks that do not fit the model.
void validate(const RunConfig& config);

/// {"model": {"<kind>": {...}}, "mode": "exact"|"float"|"auto", "bits": 128,
///  "tasks": [...], "n_max": 6, "output": {"path": ..., "format": "json"}}
RunConfig config_from_json(const nlohmann::ordered_json& doc);
nlohmann::ordered_json config_to_json(const RunConfig& config);

std::string to_string(ModeChoice mode);
ModeChoice parse_mode(const std::string& text);

/// Unsigned bits from QES_DEFAULT_BITS, or kDefaultFloatBits when unset.
unsigned default_bits_from_env();

struct CoulombSetup {
    CoulombModel model;
    int n;
    /// False when neither C nor C_squared was given; model then carries C = 0.
    bool has_C = true;
};

/// The model block instantiated in `mode`. Throws InexactError when an exact
/// value is not representable and ConfigError on invalid parameters.
std::variant<ReducedModel, CoulombSetup> build_model(const RunConfig& config, ScalarMode mode);

}  // namespace qes::cli
