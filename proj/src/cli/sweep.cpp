#include "cli/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <sstream>
#include <thread>

#include "qes/spectra.hpp"

namespace qes::cli {

namespace {

constexpr std::size_t kMaxPoints = 100000;

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, sep)) out.push_back(item);
    if (!text.empty() && text.back() == sep) out.emplace_back();
    return out;
}

Scalar exact_value(const std::string& text, const std::string& what) {
    try {
        return Scalar::parse(text, ScalarMode::exact());
    } catch (const std::exception& e) {
        throw ConfigError("sweep " + what + " '" + text + "': " + e.what());
    }
}

std::string join(const std::vector<Scalar>& xs) {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) out += ';';
        out += xs[i].decimal(20);
    }
    return out;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

void evaluate(const RunConfig& config, SweepRow& row) {
    try {
        if (config.model == "coulomb") throw ConfigError("sweeps cover the sextic models only");
        validate(config);
        ScalarMode mode = ScalarMode::exact();
        if (config.mode == ModeChoice::floating) mode = ScalarMode::floating(config.bits);
        std::variant<ReducedModel, CoulombSetup> built;
        try {
            built = build_model(config, mode);
        } catch (const InexactError&) {
            if (config.mode == ModeChoice::exact) throw ConfigError("exact mode cannot represent this point");
            mode = ScalarMode::floating(config.bits);
            built = build_model(config, mode);
        }
        const ReducedModel& m = std::get<ReducedModel>(built);
        SexticRecursion rec = m.recursion();
        QESSpectrum sp = compute_spectrum(rec);
        const Scalar mu1 = moment(rec, sp, 1);
        const Scalar mu2 = moment(rec, sp, 2);
        if (!sp.energies_exact() && config.mode != ModeChoice::exact) {
            sp = compute_spectrum(rec.to_mode(ScalarMode::floating(config.bits)));
        }
        row.fields = {m.J.to_string(),   m.gamma.decimal(20), m.a.decimal(20), m.alpha.decimal(20),
                      m.beta.decimal(20), join(sp.energies),   join(sp.weights), mu1.decimal(20),
                      mu2.decimal(20)};
        row.status = "ok";
    } catch (const ConfigError& e) {
        row.status = "config_error";
        row.message = e.what();
    } catch (const NotQESError& e) {
        row.status = "not_qes";
        row.message = e.what();
    } catch (const std::exception& e) {
        row.status = "certification_error";
        row.message = e.what();
    }
}

}  // namespace

SweepAxis parse_axis(const std::string& spec) {
    const auto eq = spec.find('=');
    if (eq == std::string::npos || eq == 0) throw ConfigError("sweep axis must look like NAME=start:stop[:step]");
    SweepAxis axis;
    axis.name = spec.substr(0, eq);
    const std::string body = spec.substr(eq + 1);
    if (body.find(':') != std::string::npos) {
        const auto parts = split(body, ':');
        if (parts.size() < 2 || parts.size() > 3) throw ConfigError("sweep range must be start:stop[:step]");
        const Scalar start = exact_value(parts[0], "start");
        const Scalar stop = exact_value(parts[1], "stop");
        const Scalar step = parts.size() == 3 ? exact_value(parts[2], "step") : Scalar::exact(1);
        if (step.sign() <= 0) throw ConfigError("sweep step must be positive");
        for (Scalar v = start; v <= stop; v = v + step) {
            if (axis.values.size() >= kMaxPoints) throw ConfigError("sweep axis too long");
            axis.values.push_back(v.to_string());
        }
    } else if (!body.empty()) {
        for (const auto& item : split(body, ',')) {
            if (item.empty()) throw ConfigError("empty value in sweep list");
            axis.values.push_back(exact_value(item, "value").to_string());
        }
    }
    return axis;
}

std::vector<std::string> sweep_header(const std::vector<SweepAxis>& axes) {
    std::vector<std::string> h{"index"};
    for (const auto& a : axes) h.push_back(a.name);
    for (const char* c : {"status", "J", "gamma", "a", "alpha", "beta", "energies", "weights", "mu1", "mu2", "message"}) {
        h.emplace_back(c);
    }
    return h;
}

std::vector<SweepRow> sweep(const RunConfig& base, const std::vector<SweepAxis>& axes, unsigned jobs) {
    if (axes.empty() || axes.size() > 2) throw ConfigError("a sweep varies one or two parameters");
    const auto allowed = allowed_params(base.model);
    for (const auto& a : axes) {
        if (std::find(allowed.begin(), allowed.end(), a.name) == allowed.end()) {
            throw ConfigError("cannot vary '" + a.name + "' for model " + base.model);
        }
    }
    if (axes.size() == 2 && axes[0].name == axes[1].name) throw ConfigError("sweep axes must differ");
    std::size_t total = 1;
    for (const auto& a : axes) total *= a.values.size();
    if (total > kMaxPoints) throw ConfigError("sweep grid too large");

    std::vector<SweepRow> rows(total);
    for (std::size_t i = 0; i < total; ++i) {
        rows[i].index = i;
        std::size_t rest = i;
        std::vector<std::string> values(axes.size());
        for (std::size_t k = axes.size(); k-- > 0;) {
            values[k] = axes[k].values[rest % axes[k].values.size()];
            rest /= axes[k].values.size();
        }
        rows[i].values = std::move(values);
    }

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < total; i = next++) {
            RunConfig point = base;
            point.tasks = {"spectrum"};
            for (std::size_t k = 0; k < axes.size(); ++k) point.params[axes[k].name] = rows[i].values[k];
            evaluate(point, rows[i]);
        }
    };
    const unsigned threads = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(total, 1))));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    return rows;
}

std::string sweep_csv(const std::vector<SweepAxis>& axes, const std::vector<SweepRow>& rows) {
    std::ostringstream out;
    const auto header = sweep_header(axes);
    for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
    out << '\n';
    for (const auto& row : rows) {
        std::vector<std::string> cells{std::to_string(row.index)};
        cells.insert(cells.end(), row.values.begin(), row.values.end());
        cells.push_back(row.status);
        if (row.fields.empty()) {
            cells.resize(cells.size() + 9);
        } else {
            cells.insert(cells.end(), row.fields.begin(), row.fields.end());
        }
        cells.push_back(row.message);
        for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << csv_field(cells[i]);
        out << '\n';
    }
    return out.str();
}

}  // namespace qes::cli
