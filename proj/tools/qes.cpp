// qes: command-line front end for the QES sector computations.

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cli/config.hpp"
#include "cli/output.hpp"
#include "cli/runner.hpp"
#include "cli/sweep.hpp"

namespace {

using namespace qes::cli;

const std::vector<std::string> kParamNames{"N", "D", "g", "G", "F", "B", "C", "C_squared", "C_sign", "H",
                                           "a", "gamma", "alpha", "beta", "J", "n"};

struct Flags {
    std::string model = "reduced";
    std::map<std::string, std::string> params;
    std::string mode = "auto";
    std::optional<unsigned> bits;
    std::optional<int> n_max;
    std::optional<std::string> out;
    std::string config_path;
    std::vector<std::string> vary;
    unsigned jobs = 1;
};

void add_common(CLI::App* cmd, Flags& f, bool with_model) {
    if (with_model) {
        cmd->add_option("--model", f.model, "calogero_marchioro | novel_correlation | calogero_sutherland | reduced | coulomb");
        for (const auto& name : kParamNames) {
            cmd->add_option_function<std::string>("--" + name, [&f, name](const std::string& v) { f.params[name] = v; },
                                                  "model parameter " + name);
        }
        cmd->add_option("--n-max", f.n_max, "highest polynomial, norm or moment index");
    }
    cmd->add_option("--mode", f.mode, "exact | float | auto");
    cmd->add_option("--bits", f.bits, "float precision in bits (default: QES_DEFAULT_BITS or 128)");
    cmd->add_option("--out", f.out, "output file (default: stdout)");
}

RunConfig make_config(const Flags& f, const std::string& task, bool check = true) {
    RunConfig c;
    c.model = f.model;
    c.params = f.params;
    c.mode = parse_mode(f.mode);
    c.bits = f.bits ? *f.bits : default_bits_from_env();
    c.tasks = {task};
    if (f.n_max) c.n_max = *f.n_max;
    c.output_path = f.out;
    // The self-dual system is alpha = 0 by definition.
    if (task == "selfdual" && c.model == "reduced" && !c.params.count("alpha")) c.params["alpha"] = "0";
    // A sweep base may omit the varied parameters; each grid point is validated.
    if (check) validate(c);
    return c;
}

int report(const std::string& kind, const std::string& message, int code) {
    std::cerr << render(error_document(kind, message, code));
    return code;
}

int run_config(const RunConfig& config) {
    const RunOutcome outcome = run(config);
    emit(config, outcome);
    return outcome.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quasi-exactly solvable sextic and oscillator-Coulomb radial problems"};
    app.require_subcommand(1);
    Flags f;

    const std::vector<std::pair<std::string, std::string>> tasks{
        {"spectrum", "QES energies (roots of the critical polynomial)"},
        {"polynomials", "energy polynomials P_n, Q_n and their recursion coefficients"},
        {"weights", "discrete weights at the QES energies"},
        {"norms", "square norms from the recursion and from the discrete measure"},
        {"moments", "moments of the discrete measure"},
        {"dual", "anti-isospectral duality check (alpha -> -alpha)"},
        {"selfdual", "symmetry report of the self-dual system (alpha = 0)"},
        {"coulomb", "termination constraints of the oscillator-Coulomb family"},
        {"validate", "residual and shooting checks of the QES eigenfunctions"}};
    std::map<CLI::App*, std::string> task_of;
    for (const auto& [name, help] : tasks) {
        CLI::App* cmd = app.add_subcommand(name, help);
        add_common(cmd, f, true);
        task_of[cmd] = name == "coulomb" ? "coulomb-constraints" : name;
    }

    CLI::App* sweep_cmd = app.add_subcommand("sweep", "CSV table over a grid of one or two parameters");
    add_common(sweep_cmd, f, true);
    sweep_cmd->add_option("--vary", f.vary, "NAME=start:stop[:step] or NAME=v1,v2,... (at most two)")->required();
    sweep_cmd->add_option("--jobs", f.jobs, "worker threads")->check(CLI::PositiveNumber);

    CLI::App* run_cmd = app.add_subcommand("run", "execute a JSON run configuration");
    run_cmd->add_option("--config", f.config_path, "configuration file")->required();
    run_cmd->add_option("--out", f.out, "output file (overrides the config)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        return report("config", e.what(), kConfigError);
    }

    try {
        if (run_cmd->parsed()) {
            std::ifstream in(f.config_path);
            if (!in) return report("config", "cannot read " + f.config_path, kConfigError);
            json doc;
            try {
                doc = json::parse(in);
            } catch (const json::exception& e) {
                return report("config", std::string("invalid JSON: ") + e.what(), kConfigError);
            }
            RunConfig config = config_from_json(doc);
            if (f.out) config.output_path = f.out;
            return run_config(config);
        }
        if (sweep_cmd->parsed()) {
            RunConfig base = make_config(f, "spectrum", false);
            if (f.vary.size() > 2) return report("config", "at most two --vary axes", kConfigError);
            std::vector<SweepAxis> axes;
            for (const auto& spec : f.vary) axes.push_back(parse_axis(spec));
            const std::string csv = sweep_csv(axes, sweep(base, axes, f.jobs));
            if (f.out) {
                std::ofstream file(*f.out);
                if (!file) return report("config", "cannot write " + *f.out, kConfigError);
                file << csv;
            } else {
                std::cout << csv;
            }
            return kOk;
        }
        for (const auto& [cmd, task] : task_of) {
            if (cmd->parsed()) return run_config(make_config(f, task));
        }
    } catch (const ConfigError& e) {
        return report("config", e.what(), kConfigError);
    }
    return kConfigError;
}
