#include "cli/runner.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>

#include "qes/coulomb.hpp"
#include "qes/radial.hpp"
#include "qes/recursion.hpp"
#include "qes/spectra.hpp"

namespace qes::cli {

namespace {

using Model = std::variant<ReducedModel, CoulombSetup>;

/// Tasks whose output is built from the energies themselves.
bool spectrum_task(const std::string& task) {
    return task == "spectrum" || task == "weights" || task == "dual" || task == "selfdual" || task == "validate";
}

Model build(const RunConfig& config, ScalarMode mode) {
    try {
        return build_model(config, mode);
    } catch (const InexactError& e) {
        throw ConfigError(std::string("exact mode cannot represent this model (") + e.what() + "); use --mode float");
    }
}

json energies_json(const QESSpectrum& sp) {
    json out = json::array();
    for (const auto& r : sp.roots) out.push_back(encode_root(r));
    return out;
}

/// Weights derived from approximate energies are approximations themselves.
json weights_json(const QESSpectrum& sp) {
    json out = json::array();
    for (const auto& w : sp.weights) out.push_back(sp.energies_exact() ? encode(w) : encode_approx(w));
    return out;
}

json maybe_approx(const Scalar& x, bool exact) { return exact ? encode(x) : encode_approx(x); }

json polynomials_sextic(const SexticRecursion& rec, int n_max) {
    json out;
    json P = json::array(), Q = json::array();
    const auto ps = generate_P(rec, n_max);
    const auto qs = generate_Q(rec, n_max);
    for (int n = 0; n <= n_max; ++n) {
        P.push_back({{"n", n}, {"coefficients", encode(ps[n])}});
        Q.push_back({{"n", n}, {"coefficients", encode(qs[n])}});
    }
    out["P"] = P;
    out["Q"] = Q;
    out["critical"] = encode(critical_polynomial(rec));
    if (n_max >= 1) {
        const ThreeTermReport rep = verify_three_term_form(rec, n_max);
        json rows = json::array();
        for (const auto& row : rep.rows) {
            rows.push_back({{"n", row.n},
                            {"A", encode(row.coeffs.A)},
                            {"B", encode(row.coeffs.B)},
                            {"C", encode(row.coeffs.C)}});
        }
        out["three_term"] = {{"rows", rows},
                             {"A_nonzero", rep.a_all_nonzero},
                             {"C1_zero", rep.c1_zero},
                             {"orthogonal_through", rep.orthogonal_through}};
        if (rep.first_collapse) out["three_term"]["first_collapse"] = *rep.first_collapse;
    }
    return out;
}

json spectrum_json(const SexticRecursion& rec, const QESSpectrum& sp) {
    json out;
    out["J"] = sp.J;
    out["critical"] = encode(sp.critical);
    out["energies"] = energies_json(sp);
    out["energies_exact"] = sp.energies_exact();
    out["weights"] = weights_json(sp);
    if (auto closed = closed_form_energies(rec, sp.mode.is_exact() ? kDefaultFloatBits : sp.mode.bits)) {
        json cf = json::array();
        for (const auto& e : *closed) cf.push_back(encode(e));
        out["closed_form"] = cf;
    }
    return out;
}

json weights_task(const QESSpectrum& sp) {
    json out;
    out["energies"] = energies_json(sp);
    out["weights"] = weights_json(sp);
    Scalar sum = Scalar::integer(0, sp.mode);
    bool positive = true;
    for (const auto& w : sp.weights) {
        sum += w;
        positive = positive && w.sign() > 0;
    }
    out["sum"] = maybe_approx(sum, sp.energies_exact());
    out["all_positive"] = positive;
    return out;
}

json positivity_json(const SexticRecursion& rec) {
    const PositivityReport pos = positivity_report(rec);
    json out;
    out["b"] = encode(pos.b);
    out["a"] = encode(pos.a);
    out["a_positive_below_J"] = pos.a_positive_below_J;
    out["truncation_index"] = pos.truncation_index ? json(*pos.truncation_index) : json(nullptr);
    out["weights_positive_implied"] = pos.weights_positive_implied;
    out["norms_positive_implied"] = pos.norms_positive_implied;
    return out;
}

json norms_json(const SexticRecursion& rec, const QESSpectrum& sp, int n_max) {
    json rows = json::array();
    const bool exact_norms = sp.mode.is_exact();
    for (int n = 0; n <= n_max; ++n) {
        const Scalar gp = norm_P(rec, n);
        const Scalar dn = discrete_norm(rec, sp, n);
        json row;
        row["n"] = n;
        row["gamma_P"] = encode(gp);
        row["discrete"] = maybe_approx(dn, exact_norms || sp.energies_exact());
        row["gamma_Q"] = encode(norm_Q(rec, n));
        if (exact_norms) row["agree"] = gp == dn;
        rows.push_back(row);
    }
    return {{"rows", rows}, {"positivity", positivity_json(rec)}};
}

json moments_json(const SexticRecursion& rec, const QESSpectrum& sp, int n_max) {
    json rows = json::array();
    const Scalar scale = rec.alpha() * 4 * rec.s();
    for (int n = 0; n <= n_max; ++n) {
        const Scalar mu = moment(rec, sp, n);
        json row{{"n", n}, {"mu", maybe_approx(mu, sp.mode.is_exact() || sp.energies_exact())}};
        if (!scale.is_zero()) {
            row["ratio"] = maybe_approx(mu / pow(scale, static_cast<unsigned>(n)),
                                        sp.mode.is_exact() || sp.energies_exact());
        }
        rows.push_back(row);
    }
    return {{"rows", rows}};
}

json dual_json(const SexticRecursion& rec) {
    const DualityReport rep = duality_check(rec);
    const bool exact = rep.max_energy_deviation.is_exact();
    const bool rational = compute_spectrum(rec).energies_exact();
    json out;
    out["energies"] = json::array();
    out["dual_energies"] = json::array();
    for (const auto& E : rep.energies) out["energies"].push_back(maybe_approx(E, rational));
    for (const auto& E : rep.dual_energies) out["dual_energies"].push_back(maybe_approx(E, rational));
    json w = json::array(), dw = json::array();
    for (const auto& x : rep.weights) w.push_back(encode_approx(x));
    for (const auto& x : rep.dual_weights) dw.push_back(encode_approx(x));
    out["weights"] = w;
    out["dual_weights"] = dw;
    out["max_energy_deviation"] = encode(rep.max_energy_deviation);
    out["max_weight_deviation"] = encode(rep.max_weight_deviation);
    out["passed"] = rep.passed;
    out["comparison"] = exact ? "exact" : "tolerance";
    return out;
}

json selfdual_json(const SexticRecursion& rec) {
    if (!rec.alpha().is_zero()) throw ConfigError("selfdual needs alpha = 0 (C = 0)");
    const SelfDualReport rep = selfdual_check(rec);
    json out;
    out["energies"] = energies_json(compute_spectrum(rec));
    json w = json::array(), odd = json::array();
    for (const auto& x : rep.weights) w.push_back(encode_approx(x));
    for (const auto& x : rep.odd_sums) odd.push_back(encode_approx(x));
    out["weights"] = w;
    out["odd_moments"] = odd;
    json exact_odd = json::array();
    const DiscreteMeasure measure(rec);
    for (int m = 0; m < rec.J(); ++m) exact_odd.push_back(encode(measure.moment(2 * m + 1)));
    out["odd_moments_exact"] = exact_odd;
    out["max_energy_asymmetry"] = encode(rep.max_energy_asymmetry);
    out["max_weight_asymmetry"] = encode(rep.max_weight_asymmetry);
    out["zero_level_consistent"] = rep.zero_level_consistent;
    out["passed"] = rep.passed;
    return out;
}

bool certified(const LevelValidation& v, const ValidationThresholds& t) {
    return v.residual.extrapolated < t.residual && std::fabs(v.residual.slope - t.slope) <= t.slope_tolerance &&
           v.relative_error < t.energy_relative;
}

json level_json(const LevelValidation& v, long double E, int nodes, const ValidationThresholds& t) {
    json out;
    out["energy"] = encode(E);
    out["nodes"] = nodes;
    out["residual"] = encode(v.residual);
    out["shoot"] = {{"bracket", {encode(v.bracket_lo), encode(v.bracket_hi)}},
                    {"energy", encode(v.shot_energy)},
                    {"relative_error", encode(v.relative_error)}};
    out["passed"] = certified(v, t);
    return out;
}

json validate_sextic(const ReducedModel& model, const QESSpectrum& sp, const ValidationThresholds& t) {
    const SexticRecursion rec = model.recursion();
    const RadialProblem problem = sextic_problem(rec, model.a, model.gamma);
    const std::size_t J = sp.energies.size();
    std::vector<std::future<json>> jobs;
    for (std::size_t k = 0; k < J; ++k) {
        jobs.push_back(std::async(std::launch::async, [&, k] {
            const long double E = sp.energies[k].to_long_double();
            long double half = std::max(1.0L, std::fabs(E) / 4);
            if (k > 0) half = std::min(half, (E - sp.energies[k - 1].to_long_double()) / 2);
            if (k + 1 < J) half = std::min(half, (sp.energies[k + 1].to_long_double() - E) / 2);
            const SeriesEigenfunction phi = build_sextic_eigenfunction(rec, model.a, model.gamma, sp.energies[k]);
            return level_json(validate_level(problem, phi, E, half, t.points), E, phi.nodes(), t);
        }));
    }
    json levels = json::array();
    bool passed = true;
    for (auto& job : jobs) {
        json level = job.get();
        passed = passed && level["passed"].get<bool>();
        levels.push_back(std::move(level));
    }
    return {{"levels", levels}, {"passed", passed}};
}

json validate_coulomb(const CoulombSetup& setup, const ValidationThresholds& t) {
    const CoulombLevel level = coulomb_level(setup.model, setup.n);
    const RadialProblem problem = coulomb_problem(setup.model);
    const SeriesEigenfunction phi = build_coulomb_eigenfunction(level);
    const long double E = level.E.to_long_double();
    const LevelValidation v = validate_level(problem, phi, E, setup.model.B().to_long_double(), t.points);
    json out = level_json(v, E, level.nodes, t);
    out["label"] = level.label;
    return {{"levels", json::array({out})}, {"passed", out["passed"]}};
}

json coulomb_polynomials_json(const CoulombSetup& setup, int n_max) {
    const CoulombSeries series = coulomb_polynomials(setup.model, n_max);
    json rows = json::array();
    for (int n = 0; n <= n_max; ++n) {
        rows.push_back({{"n", n}, {"c_power", n % 2}, {"coefficients", encode(series.reduced[n])}});
    }
    json out;
    out["convention"] = "P_n = C^c_power * R_n; coefficients list R_n in ascending powers of E";
    out["R"] = rows;
    if (n_max >= 1) {
        const ObstructionReport rep = orthogonality_obstruction(setup.model, n_max);
        json ob;
        ob["first_violation_n"] = rep.first_violation_n ? json(*rep.first_violation_n) : json(nullptr);
        ob["first_violation"] = rep.first_violation;
        ob["collapses_to_three_term"] = rep.collapses_to_three_term;
        json steps = json::array();
        for (const auto& s : rep.even_steps) {
            steps.push_back({{"m", s.m}, {"A", encode(s.A)}, {"B", encode(s.B)}, {"C", encode(s.C)}});
        }
        ob["even_steps"] = steps;
        ob["note"] = rep.note;
        out["obstruction"] = ob;
    }
    return out;
}

json coulomb_constraints_json(const CoulombSetup& setup) {
    const CoulombModel& m = setup.model;
    json rows = json::array();
    std::optional<int> on_surface;
    for (int n = 1; n <= setup.n; ++n) {
        json row;
        row["n"] = n;
        try {
            const TerminationSolution sol = termination_solve(m.a(), m.gamma(), n, m.B());
            row["E"] = encode(sol.E);
            json c2 = json::array();
            for (const auto& r : sol.roots) {
                c2.push_back(encode_root(r));
                const Scalar diff = abs(r.value - m.C_squared());
                const bool match = r.exact ? diff.is_zero()
                                           : (r.lower <= m.C_squared() && m.C_squared() <= r.upper) ||
                                                 (!diff.is_exact() && diff <= check_tolerance(r.value));
                if (match && setup.has_C && n == setup.n) on_surface = n;
            }
            row["C_squared"] = c2;
            row["C_squared_over_B"] = [&] {
                json ratios = json::array();
                for (const auto& r : sol.roots) ratios.push_back(maybe_approx(r.value / m.B(), r.exact));
                return ratios;
            }();
            row["constraint"] = encode(sol.constraint);
        } catch (const std::domain_error& e) {
            row["C_squared"] = json::array();
            row["status"] = e.what();
        }
        rows.push_back(row);
    }
    json out;
    out["rows"] = rows;
    out["on_surface"] = on_surface.has_value();
    if (on_surface) {
        const CoulombLevel level = coulomb_level(m, setup.n);
        json eta = json::array();
        for (const auto& c : level.eta) eta.push_back(encode(c));
        out["level"] = {{"n", level.n}, {"E", encode(level.E)}, {"eta", eta},
                        {"nodes", level.nodes}, {"label", level.label}};
    }
    return out;
}

}  // namespace

ScalarMode resolve_mode(const RunConfig& config) {
    switch (config.mode) {
        case ModeChoice::exact: return ScalarMode::exact();
        case ModeChoice::floating: return ScalarMode::floating(config.bits);
        case ModeChoice::automatic: break;
    }
    try {
        (void)build_model(config, ScalarMode::exact());
        return ScalarMode::exact();
    } catch (const InexactError&) {
        return ScalarMode::floating(config.bits);
    }
}

json run_task(const RunConfig& config, const std::string& task, const ValidationThresholds& thresholds) {
    validate(config);
    ScalarMode mode = resolve_mode(config);
    Model model = build(config, mode);

    json results;
    if (const auto* coulomb = std::get_if<CoulombSetup>(&model)) {
        if (task == "polynomials") {
            results = coulomb_polynomials_json(*coulomb, config.n_max);
        } else if (task == "coulomb-constraints") {
            results = coulomb_constraints_json(*coulomb);
        } else if (task == "validate") {
            results = validate_coulomb(*coulomb, thresholds);
        } else {
            throw ConfigError("task '" + task + "' is not defined for the coulomb model");
        }
    } else {
        const ReducedModel* reduced = &std::get<ReducedModel>(model);
        SexticRecursion rec = reduced->recursion();
        QESSpectrum sp;
        if (task != "polynomials" && task != "dual" && task != "selfdual") sp = compute_spectrum(rec);
        // Auto mode: spectral data with irrational energies is reported in float.
        if (config.mode == ModeChoice::automatic && mode.is_exact() && spectrum_task(task)) {
            if (!compute_spectrum(rec).energies_exact()) {
                mode = ScalarMode::floating(config.bits);
                model = build(config, mode);
                reduced = &std::get<ReducedModel>(model);
                rec = reduced->recursion();
                sp = compute_spectrum(rec);
            }
        }
        if (task == "polynomials") {
            results = polynomials_sextic(rec, config.n_max);
        } else if (task == "spectrum") {
            results = spectrum_json(rec, sp);
        } else if (task == "weights") {
            results = weights_task(sp);
        } else if (task == "norms") {
            results = norms_json(rec, sp, config.n_max);
        } else if (task == "moments") {
            results = moments_json(rec, sp, config.n_max);
        } else if (task == "dual") {
            results = dual_json(rec);
        } else if (task == "selfdual") {
            results = selfdual_json(rec);
        } else if (task == "validate") {
            const QESSpectrum float_sp =
                sp.mode.is_exact() ? compute_spectrum(rec.to_mode(ScalarMode::floating(config.bits))) : sp;
            results = validate_sextic(*reduced, float_sp, thresholds);
        } else {
            throw ConfigError("task '" + task + "' is not defined for sextic models");
        }
    }

    json doc;
    doc["schema_version"] = kSchemaVersion;
    doc["config"] = config_to_json(config);
    doc["mode"] = mode.name();
    doc["task"] = task;
    if (const auto* coulomb = std::get_if<CoulombSetup>(&model)) {
        doc["model"] = encode(coulomb->model);
        doc["model"]["n"] = coulomb->n;
        if (!coulomb->has_C) {
            doc["model"].erase("C_squared");
            doc["model"].erase("C_sign");
        }
    } else {
        doc["model"] = encode(std::get<ReducedModel>(model));
    }
    doc["results"] = results;
    return doc;
}

RunOutcome run(const RunConfig& config, const ValidationThresholds& thresholds) {
    RunOutcome out;
    auto fail = [&](const std::string& kind, const std::string& message, int code) {
        out.exit_code = code;
        out.error = error_document(kind, message, code);
    };
    try {
        validate(config);
        for (const auto& task : config.tasks) {
            json doc = run_task(config, task, thresholds);
            const bool failed = task == "validate" && !doc["results"]["passed"].get<bool>();
            out.documents.push_back({task, std::move(doc)});
            if (failed) {
                fail("certification", "validation thresholds not met; see the validate document", kCertificationFailure);
                return out;
            }
        }
    } catch (const ConfigError& e) {
        fail("config", e.what(), kConfigError);
    } catch (const NotQESError& e) {
        fail("not_qes", e.what(), kNotQES);
    } catch (const RootCertificationError& e) {
        fail("certification", e.what(), kCertificationFailure);
    } catch (const ShootingError& e) {
        fail("certification", e.what(), kCertificationFailure);
    } catch (const CertificationFailure& e) {
        fail("certification", e.what(), kCertificationFailure);
    } catch (const std::invalid_argument& e) {
        fail("config", e.what(), kConfigError);
    } catch (const std::domain_error& e) {
        fail("certification", e.what(), kCertificationFailure);
    }
    return out;
}

void emit(const RunConfig& config, const RunOutcome& outcome) {
    if (!config.output_path) {
        for (const auto& d : outcome.documents) std::cout << render(d.doc);
    } else {
        const std::filesystem::path base(*config.output_path);
        for (const auto& d : outcome.documents) {
            std::filesystem::path target = base;
            if (outcome.documents.size() > 1 || config.tasks.size() > 1) {
                target = base.parent_path() / (base.stem().string() + "." + d.task + base.extension().string());
            }
            std::ofstream file(target);
            if (!file) throw ConfigError("cannot write " + target.string());
            file << render(d.doc);
        }
    }
    if (outcome.error) std::cerr << render(*outcome.error);
}

}  // namespace qes::cli
