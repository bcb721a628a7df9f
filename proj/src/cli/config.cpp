#include "cli/config.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>

namespace qes::cli {

using json = nlohmann::ordered_json;

const std::vector<std::string>& model_kinds() {
    static const std::vector<std::string> kinds{"calogero_marchioro", "novel_correlation", "calogero_sutherland",
                                                "reduced", "coulomb"};
    return kinds;
}

const std::vector<std::string>& task_names() {
    static const std::vector<std::string> names{"polynomials", "spectrum", "weights", "norms", "moments",
                                                "dual",        "selfdual", "validate", "coulomb-constraints"};
    return names;
}

std::vector<std::string> allowed_params(const std::string& model, std::vector<std::string>* required) {
    std::vector<std::string> req, opt;
    if (model == "calogero_marchioro") {
        req = {"N", "D", "g", "F", "C", "H"};
        opt = {"G", "B", "J"};
    } else if (model == "novel_correlation" || model == "calogero_sutherland") {
        req = {"N", "g", "F", "C", "H"};
        opt = {"B", "J"};
    } else if (model == "reduced") {
        req = {"a", "gamma", "alpha", "beta", "J"};
    } else if (model == "coulomb") {
        req = {"a", "gamma", "B", "n"};
        opt = {"C", "C_squared", "C_sign"};
    } else {
        throw ConfigError("unknown model kind '" + model + "'");
    }
    if (required) *required = req;
    req.insert(req.end(), opt.begin(), opt.end());
    return req;
}

void validate(const RunConfig& config) {
    std::vector<std::string> required;
    const auto allowed = allowed_params(config.model, &required);
    for (const auto& [key, value] : config.params) {
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
            throw ConfigError("parameter '" + key + "' does not belong to model " + config.model);
        }
        if (value.empty()) throw ConfigError("parameter '" + key + "' is empty");
    }
    for (const auto& key : required) {
        if (!config.params.count(key)) throw ConfigError("model " + config.model + " needs parameter '" + key + "'");
    }
    const bool sextic_physical = config.model != "reduced" && config.model != "coulomb";
    if (sextic_physical && config.params.count("B") == config.params.count("J")) {
        throw ConfigError("exactly one of B and J must be given");
    }
    if (config.model == "coulomb") {
        if (config.params.count("C") && config.params.count("C_squared")) {
            throw ConfigError("exactly one of C and C_squared must be given");
        }
        const bool no_C = !config.params.count("C") && !config.params.count("C_squared");
        for (const auto& task : config.tasks) {
            if (no_C && task != "coulomb-constraints") throw ConfigError("task '" + task + "' needs C or C_squared");
        }
        if (config.params.count("C_sign") && !config.params.count("C_squared")) {
            throw ConfigError("C_sign only accompanies C_squared");
        }
    }
    if (config.tasks.empty()) throw ConfigError("no tasks requested");
    std::set<std::string> seen;
    for (const auto& task : config.tasks) {
        const auto& names = task_names();
        if (std::find(names.begin(), names.end(), task) == names.end()) throw ConfigError("unknown task '" + task + "'");
        if (!seen.insert(task).second) throw ConfigError("task '" + task + "' listed twice");
        const bool coulomb = config.model == "coulomb";
        if (task == "coulomb-constraints" && !coulomb) throw ConfigError("coulomb-constraints needs the coulomb model");
        if (coulomb && task != "coulomb-constraints" && task != "polynomials" && task != "validate") {
            throw ConfigError("task '" + task + "' is not defined for the coulomb model");
        }
    }
    if (config.n_max < 0 || config.n_max > 200) throw ConfigError("n_max must lie in [0, 200]");
    if (config.mode != ModeChoice::exact && (config.bits < 24 || config.bits > 65536)) {
        throw ConfigError("bits must lie in [24, 65536]");
    }
    if (config.output_format != "json") throw ConfigError("output format must be json");
}

std::string to_string(ModeChoice mode) {
    switch (mode) {
        case ModeChoice::automatic: return "auto";
        case ModeChoice::exact: return "exact";
        case ModeChoice::floating: return "float";
    }
    return "auto";
}

ModeChoice parse_mode(const std::string& text) {
    if (text == "auto") return ModeChoice::automatic;
    if (text == "exact") return ModeChoice::exact;
    if (text == "float") return ModeChoice::floating;
    throw ConfigError("mode must be exact, float or auto, got '" + text + "'");
}

unsigned default_bits_from_env() {
    const char* raw = std::getenv("QES_DEFAULT_BITS");
    if (!raw || !*raw) return kDefaultFloatBits;
    char* end = nullptr;
    const unsigned long v = std::strtoul(raw, &end, 10);
    if (*end != '\0' || v < 24 || v > 65536) throw ConfigError("QES_DEFAULT_BITS must be an integer in [24, 65536]");
    return static_cast<unsigned>(v);
}

namespace {

std::string value_text(const json& v, const std::string& key) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_integer() || v.is_number_unsigned() || v.is_number_float()) return v.dump();
    throw ConfigError("parameter '" + key + "' must be a number or a string");
}

}  // namespace

RunConfig config_from_json(const json& doc) {
    if (!doc.is_object()) throw ConfigError("config must be a JSON object");
    static const std::set<std::string> top{"model", "mode", "bits", "tasks", "n_max", "output"};
    for (const auto& [key, value] : doc.items()) {
        if (!top.count(key)) throw ConfigError("unknown config key '" + key + "'");
    }
    RunConfig c;
    if (!doc.contains("model") || !doc["model"].is_object() || doc["model"].size() != 1) {
        throw ConfigError("config needs exactly one model block");
    }
    const auto& block = *doc["model"].begin();
    c.model = doc["model"].begin().key();
    if (!block.is_object()) throw ConfigError("model block must be an object");
    for (const auto& [key, value] : block.items()) c.params[key] = value_text(value, key);
    try {
        if (doc.contains("mode")) c.mode = parse_mode(doc["mode"].get<std::string>());
        c.bits = doc.contains("bits") ? doc["bits"].get<unsigned>() : default_bits_from_env();
        if (doc.contains("tasks")) c.tasks = doc["tasks"].get<std::vector<std::string>>();
        if (doc.contains("n_max")) c.n_max = doc["n_max"].get<int>();
        if (doc.contains("output")) {
            const auto& out = doc["output"];
            if (out.contains("path")) c.output_path = out["path"].get<std::string>();
            if (out.contains("format")) c.output_format = out["format"].get<std::string>();
        }
    } catch (const json::exception& e) {
        throw ConfigError(std::string("malformed config: ") + e.what());
    }
    validate(c);
    return c;
}

json config_to_json(const RunConfig& c) {
    json params = json::object();
    for (const auto& [key, value] : c.params) params[key] = value;
    json doc;
    doc["model"] = {{c.model, params}};
    doc["mode"] = to_string(c.mode);
    if (c.mode != ModeChoice::exact) doc["bits"] = c.bits;
    doc["tasks"] = c.tasks;
    doc["n_max"] = c.n_max;
    return doc;
}

namespace {

Scalar number(const RunConfig& c, const std::string& key, ScalarMode mode) {
    try {
        return Scalar::parse(c.params.at(key), mode);
    } catch (const InexactError&) {
        throw;
    } catch (const std::out_of_range&) {
        throw ConfigError("missing parameter '" + key + "'");
    } catch (const std::exception& e) {
        throw ConfigError("parameter '" + key + "': " + e.what());
    }
}

long integer(const RunConfig& c, const std::string& key) {
    Scalar v = number(c, key, ScalarMode::exact());
    if (!v.is_integer()) throw ConfigError("parameter '" + key + "' must be an integer, got " + c.params.at(key));
    return v.as_rational().get_num().get_si();
}

std::optional<Scalar> maybe(const RunConfig& c, const std::string& key, ScalarMode mode) {
    if (!c.params.count(key)) return std::nullopt;
    return number(c, key, mode);
}

SexticCoefficients radial(const RunConfig& c, ScalarMode mode) {
    SexticCoefficients r{number(c, "F", mode), maybe(c, "B", mode), number(c, "C", mode), number(c, "H", mode),
                         std::nullopt};
    if (c.params.count("J")) {
        Scalar J = number(c, "J", ScalarMode::exact());
        if (!J.is_integer() || J < 1) {
            throw NotQESError("J = " + J.to_string() + " is not a positive integer; the sector is quasi-exactly "
                              "solvable only for J = 1, 2, 3, ...");
        }
        r.J = J.as_rational().get_num().get_si();
    }
    return r;
}

}  // namespace

std::variant<ReducedModel, CoulombSetup> build_model(const RunConfig& c, ScalarMode mode) {
    validate(c);
    try {
        if (c.model == "reduced") {
            Scalar J = number(c, "J", ScalarMode::exact());
            if (!J.is_integer() || J < 1) {
                throw NotQESError("J = " + J.to_string() + " is not a positive integer; the sector is "
                                  "quasi-exactly solvable only for J = 1, 2, 3, ...");
            }
            return reduced_model(number(c, "a", mode), number(c, "gamma", mode), number(c, "alpha", mode),
                                 number(c, "beta", mode), J.as_rational().get_num().get_si());
        }
        if (c.model == "calogero_marchioro") {
            CalogeroMarchioroParams p;
            p.N = static_cast<int>(integer(c, "N"));
            p.D = static_cast<int>(integer(c, "D"));
            p.g = number(c, "g", mode);
            p.G = maybe(c, "G", mode);
            p.radial = radial(c, mode);
            return cm_reduce(p);
        }
        if (c.model == "novel_correlation") {
            NovelCorrelationParams p;
            p.N = static_cast<int>(integer(c, "N"));
            p.g = number(c, "g", mode);
            p.radial = radial(c, mode);
            return novel_reduce(p);
        }
        if (c.model == "calogero_sutherland") {
            CalogeroSutherlandParams p;
            p.N = static_cast<int>(integer(c, "N"));
            p.g = number(c, "g", mode);
            p.radial = radial(c, mode);
            return cs_reduce(p);
        }
        // coulomb
        const long n = integer(c, "n");
        if (n < 1) throw ConfigError("coulomb degree n must be at least 1");
        Scalar a = number(c, "a", mode), gamma = number(c, "gamma", mode), B = number(c, "B", mode);
        if (!c.params.count("C") && !c.params.count("C_squared")) {
            return CoulombSetup{CoulombModel::from_C(a, gamma, B, a.like(0)), static_cast<int>(n), false};
        }
        if (c.params.count("C")) {
            return CoulombSetup{CoulombModel::from_C(a, gamma, B, number(c, "C", mode)), static_cast<int>(n)};
        }
        Scalar C2 = number(c, "C_squared", mode);
        long sign = c.params.count("C_sign") ? integer(c, "C_sign") : 1;
        if (sign != 1 && sign != -1) throw ConfigError("C_sign must be 1 or -1");
        if (C2.is_zero()) sign = 0;
        return CoulombSetup{CoulombModel::from_C_squared(a, gamma, B, C2, static_cast<int>(sign)), static_cast<int>(n)};
    } catch (const ModelError& e) {
        throw ConfigError(e.what());
    } catch (const std::invalid_argument& e) {
        if (dynamic_cast<const ConfigError*>(&e)) throw;
        throw ConfigError(e.what());
    }
}

}  // namespace qes::cli
