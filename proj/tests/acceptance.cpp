// Acceptance run: one PASS/FAIL line per criterion, exit status 1 on any FAIL.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "qes/coulomb.hpp"
#include "qes/models.hpp"
#include "qes/radial.hpp"
#include "qes/spectra.hpp"
#include "support.hpp"

using namespace qes;
using qes::test::Q;

namespace {

const ScalarMode kF128 = ScalarMode::floating(128);

// Pinned tolerances.
const char* const kClosedFormRel = "1e-25";
constexpr long double kResidualMax = 1e-8L;
constexpr long double kSlopeTarget = 2.0L;
constexpr long double kSlopeTol = 0.2L;
constexpr long double kShootRel = 1e-6L;
constexpr int kGridPoints = 10000;
constexpr double kRuntimeLimitSeconds = 60.0;

struct Tally {
    int failed = 0;
    std::vector<std::string> notes;
    void fail(const std::string& what) {
        if (++failed <= 3) notes.push_back(what);
    }
    void require(bool ok, const std::string& what) {
        if (!ok) fail(what);
    }
};

int total_failures = 0;

void criterion(int id, const std::string& title, const std::function<std::string(Tally&)>& body) {
    Tally t;
    std::string detail;
    try {
        detail = body(t);
    } catch (const std::exception& e) {
        t.fail(std::string("exception: ") + e.what());
    }
    const bool ok = t.failed == 0;
    if (!ok) ++total_failures;
    std::printf("%s %2d  %s", ok ? "PASS" : "FAIL", id, title.c_str());
    if (!detail.empty()) std::printf("  [%s]", detail.c_str());
    for (const auto& n : t.notes) std::printf("  {%s}", n.c_str());
    std::printf("\n");
    std::fflush(stdout);
}

Scalar tol() { return Scalar::parse(kClosedFormRel, kF128); }

Scalar f(const Scalar& x) { return x.to_mode(kF128); }

bool close(const Scalar& got, const Scalar& want) {
    return abs(got - want) <= tol() * (abs(want) > 1 ? abs(want) : want.like(1));
}

/// Random rational (alpha, beta > 0, s > 0) panel, fixed seed.
std::vector<SexticRecursion> panel(int J, int count, bool self_dual = false, unsigned seed = test::kSeed) {
    test::RationalSource src(seed + static_cast<unsigned>(J));
    std::vector<SexticRecursion> out;
    for (int i = 0; i < count; ++i) {
        const Scalar alpha = self_dual ? Q(0) : src.any(6, 4);
        out.emplace_back(alpha, src.positive(6, 5), src.positive(8, 3), J);
    }
    return out;
}

std::string str(long double x) {
    std::ostringstream os;
    os.precision(3);
    os << x;
    return os.str();
}

}  // namespace

int main() {
    criterion(1, "J=1 energy is exactly 4 alpha s", [](Tally& t) {
        test::RationalSource src(test::kSeed);
        for (int i = 0; i < 100; ++i) {
            const Scalar alpha = src.any(), beta = src.positive(), s = src.positive();
            const auto e = qes_energies(SexticRecursion(alpha, beta, s, 1));
            t.require(e.size() == 1 && e[0].is_exact() && e[0] == alpha * 4 * s,
                      "alpha=" + alpha.to_string() + " s=" + s.to_string());
        }
        return "100 random rational triples, exact mode";
    });

    criterion(2, "J=2 energies and weights match the closed forms", [](Tally& t) {
        int n = 0;
        for (const auto& exact : panel(2, 40)) {
            const SexticRecursion rec = exact.to_mode(kF128);
            const Scalar alpha = rec.alpha(), beta = rec.beta(), s = rec.s();
            const Scalar root = sqrt(alpha * alpha + beta * 4 * s);
            const Scalar E1 = alpha * 4 * (s + 1) - root * 4, E2 = alpha * 4 * (s + 1) + root * 4;
            const Scalar w1 = Scalar::exact(1, 2).to_mode(kF128) + alpha / (root * 2);
            const Scalar w2 = Scalar::exact(1, 2).to_mode(kF128) - alpha / (root * 2);
            const QESSpectrum sp = compute_spectrum(rec);
            t.require(sp.energies.size() == 2, "two levels");
            if (sp.energies.size() != 2) continue;
            t.require(close(sp.energies[0], E1) && close(sp.energies[1], E2), "energies " + exact.alpha().to_string());
            t.require(close(sp.weights[0], w1) && close(sp.weights[1], w2), "weights " + exact.alpha().to_string());
            t.require(close(sp.weights[0] + sp.weights[1], f(Q(1))), "unit sum");
            t.require(sp.weights[0].sign() > 0 && sp.weights[1].sign() > 0, "positive weights");
            ++n;
        }
        return std::to_string(n) + " panel models, float-128, rel " + kClosedFormRel;
    });

    criterion(3, "self-dual J=3, J=4 spectra and weights", [](Tally& t) {
        Scalar worst_competing = f(Q(0));
        for (const auto& exact : panel(3, 20, true)) {
            const SexticRecursion rec = exact.to_mode(kF128);
            const Scalar beta = rec.beta(), s = rec.s();
            const Scalar e = sqrt(beta * 2 * (s * 2 + 1)) * 8;
            const QESSpectrum sp = compute_spectrum(rec);
            const auto closed = closed_form_energies(exact);
            t.require(closed.has_value(), "J=3 closed form available");
            const std::vector<Scalar> want{-e, f(Q(0)), e};
            for (int k = 0; k < 3; ++k) {
                t.require(close(sp.energies[k], want[k]), "J=3 root E_" + std::to_string(k + 1));
                if (closed) t.require(close((*closed)[k], want[k]), "J=3 closed E_" + std::to_string(k + 1));
            }
            const Scalar outer = s / ((s * 2 + 1) * 2), middle = (s + 1) / (s * 2 + 1);
            t.require(close(sp.weights[0], outer) && close(sp.weights[2], outer), "J=3 outer weights");
            t.require(close(sp.weights[1], middle), "J=3 middle weight");
            const Scalar competing = (s + 1) / (s * 2 + 2);
            const Scalar gap = abs(competing - sp.weights[1]);
            if (gap > worst_competing) worst_competing = gap;
        }
        for (const auto& exact : panel(4, 20, true)) {
            const SexticRecursion rec = exact.to_mode(kF128);
            const Scalar beta = rec.beta(), s = rec.s();
            const Scalar disc = sqrt(s * (s + 2) * 16 + 25);
            const Scalar outer_E = sqrt(beta * 320 * (s + 1) + beta * 64 * disc);
            const Scalar inner_E = sqrt(beta * 320 * (s + 1) - beta * 64 * disc);
            // E_4 = +outer, as E_k = -E_{J+1-k} requires.
            const std::vector<Scalar> want{-outer_E, -inner_E, inner_E, outer_E};
            const QESSpectrum sp = compute_spectrum(rec);
            const auto closed = closed_form_energies(exact);
            t.require(closed.has_value(), "J=4 closed form available");
            for (int k = 0; k < 4; ++k) {
                t.require(close(sp.energies[k], want[k]), "J=4 root E_" + std::to_string(k + 1));
                if (closed) t.require(close((*closed)[k], want[k]), "J=4 closed E_" + std::to_string(k + 1));
            }
            const Scalar ratio = (s * 2 + 5) / disc;
            const Scalar w_out = (1 - ratio) / 4, w_in = (1 + ratio) / 4;
            t.require(close(sp.weights[0], w_out) && close(sp.weights[3], w_out), "J=4 outer weights");
            t.require(close(sp.weights[1], w_in) && close(sp.weights[2], w_in), "J=4 inner weights");
        }
        t.require(worst_competing > Scalar::parse("1e-3", kF128), "competing J=3 middle weight would agree");
        return "20+20 panel models, rel " + std::string(kClosedFormRel) +
               "; note: the competing J=3 middle weight (s+1)/(2s+2) misses the linear solve by up to " +
               worst_competing.decimal(3) + ", the weights then fail to sum to 1";
    });

    criterion(4, "P_{n+J} = P_J Q_n exactly for J <= 6, n <= 10", [](Tally& t) {
        int checks = 0;
        for (int J = 1; J <= 6; ++J) {
            for (const auto& rec : panel(J, 6)) {
                const auto P = generate_P(rec, J + 10);
                const auto Qn = generate_Q(rec, 10);
                for (int n = 0; n <= 10; ++n) {
                    const DivisionResult d = poly_divide(P[n + J], P[J]);
                    t.require(d.remainder.is_zero(), "remainder J=" + std::to_string(J) + " n=" + std::to_string(n));
                    t.require(d.quotient == Qn[n], "quotient J=" + std::to_string(J) + " n=" + std::to_string(n));
                    ++checks;
                }
            }
        }
        return std::to_string(checks) + " divisions, exact mode";
    });

    criterion(5, "norms: recursion = discrete measure, P vanishes from J, Q positive", [](Tally& t) {
        int models = 0;
        for (int J = 1; J <= 6; ++J) {
            for (const auto& rec : panel(J, 6)) {
                const QESSpectrum sp = compute_spectrum(rec);
                for (int n = 0; n < J; ++n) {
                    const Scalar d = discrete_norm(rec, sp, n);
                    t.require(d.is_exact() && d == norm_P(rec, n), "discrete norm n=" + std::to_string(n));
                }
                for (int n = J; n <= J + 5; ++n) t.require(norm_P(rec, n) == 0, "norm_P(n >= J)");
                for (int n = 0; n <= 10; ++n) t.require(norm_Q(rec, n).sign() > 0, "norm_Q > 0");
                ++models;
            }
        }
        return std::to_string(models) + " panel models, exact mode";
    });

    criterion(6, "positivity of the measure and the norms", [](Tally& t) {
        int models = 0;
        for (int J = 1; J <= 6; ++J) {
            for (const auto& rec : panel(J, 6)) {
                const PositivityReport p = positivity_report(rec);
                t.require(p.a_positive_below_J && p.weights_positive_implied && p.norms_positive_implied,
                          "positivity_report J=" + std::to_string(J));
                for (const auto& w : compute_spectrum(rec.to_mode(kF128)).weights) t.require(w.sign() > 0, "weight > 0");
                for (int n = 0; n < J; ++n) t.require(norm_P(rec, n).sign() > 0, "gamma_P > 0");
                ++models;
            }
        }
        return std::to_string(models) + " panel models";
    });

    criterion(7, "duality and vanishing self-dual odd moments", [](Tally& t) {
        int models = 0;
        for (int J = 1; J <= 6; ++J) {
            for (const auto& rec : panel(J, 5)) {
                const auto e = qes_energies(rec);
                const auto d = qes_energies(dualize(rec));
                t.require(d.size() == e.size(), "level count");
                for (std::size_t k = 0; k < e.size() && d.size() == e.size(); ++k) {
                    t.require(d[k] == -e[e.size() - 1 - k], "dual energy J=" + std::to_string(J));
                }
                const DualityReport rep = duality_check(rec);
                t.require(rep.passed && rep.max_energy_deviation.is_exact() && rep.max_energy_deviation == 0,
                          "duality_check");
                ++models;
            }
            for (const auto& sd : panel(J, 5, true)) {
                const DiscreteMeasure mu(sd);
                for (int m = 0; m <= 2 * J; ++m) t.require(mu.moment(2 * m + 1) == 0, "odd moment");
                const SelfDualReport r = selfdual_check(sd);
                t.require(r.passed && r.max_odd_sum == 0, "selfdual_check");
                ++models;
            }
        }
        return std::to_string(models) + " models, exact equality";
    });

    criterion(8, "Coulomb termination constraints and B-linearity", [](Tally& t) {
        test::RationalSource src(test::kSeed + 8);
        for (int i = 0; i < 50; ++i) {
            const Scalar a = src.non_negative(), g = src.positive(), B = src.positive();
            const auto s1 = termination_solve(a, g, 1, B), s2 = termination_solve(a, g, 2, B);
            t.require(s1.C_squared.size() == 1 && s1.roots[0].exact && s1.C_squared[0] == (a * 2 + g * 2 + 1) * B * 2,
                      "n=1");
            t.require(s2.C_squared.size() == 1 && s2.roots[0].exact && s2.C_squared[0] == (a * 4 + g * 4 + 3) * B * 4,
                      "n=2");
        }
        int scaled_checks = 0;
        for (int i = 0; i < 10; ++i) {
            const Scalar a = src.non_negative(), g = src.positive(), B = src.positive();
            for (int n = 1; n <= 4; ++n) {
                const auto base = termination_solve(a, g, n, B);
                for (long k : {2L, 3L, 5L}) {
                    const auto scaled = termination_solve(a, g, n, B * k);
                    // Monic constraint in x = C^2: c_j(kB) = c_j(B) k^(deg - j).
                    const auto& cb = base.constraint.coeffs();
                    const auto& cs = scaled.constraint.coeffs();
                    bool same = cb.size() == cs.size();
                    for (std::size_t j = 0; same && j < cb.size(); ++j) {
                        same = cs[j] == cb[j] * pow(Q(k), static_cast<long>(cb.size() - 1 - j));
                    }
                    t.require(same, "constraint scaling n=" + std::to_string(n));
                    t.require(scaled.C_squared.size() == base.C_squared.size(), "root count");
                    for (std::size_t r = 0; r < base.roots.size() && r < scaled.roots.size(); ++r) {
                        if (base.roots[r].exact) {
                            t.require(scaled.C_squared[r] == base.C_squared[r] * k, "exact root scaling");
                        } else {
                            t.require(scaled.roots[r].lower <= base.roots[r].upper * k &&
                                          scaled.roots[r].upper >= base.roots[r].lower * k,
                                      "certified root scaling");
                        }
                    }
                    ++scaled_checks;
                }
            }
        }
        return "50 random (a, gamma, B) for n=1,2; " + std::to_string(scaled_checks) + " rescalings for n=1..4";
    });

    criterion(9, "Coulomb polynomials violate the three-term hypotheses unless C = 0", [](Tally& t) {
        test::RationalSource src(test::kSeed + 9);
        std::string sample;
        for (int i = 0; i < 30; ++i) {
            Scalar C = src.any();
            if (C.is_zero()) C = Q(i + 1, 2);
            const auto rep =
                orthogonality_obstruction(CoulombModel::from_C(src.non_negative(), src.positive(), src.positive(), C), 8);
            t.require(rep.first_violation_n.has_value() && !rep.first_violation.empty(), "violation reported");
            t.require(!rep.collapses_to_three_term, "no collapse for C != 0");
            if (sample.empty()) sample = rep.first_violation;
        }
        for (int i = 0; i < 10; ++i) {
            const CoulombModel osc = CoulombModel::from_C(src.non_negative(), src.positive(), src.positive(), Q(0));
            const auto rep = orthogonality_obstruction(osc, 8);
            t.require(rep.collapses_to_three_term && rep.even_steps.size() == 4, "collapse for C = 0");
            const CoulombSeries s = coulomb_polynomials(osc, 8);
            for (const auto& step : rep.even_steps) {
                const std::size_t k = static_cast<std::size_t>(2 * step.m);
                t.require(s.P(k) == PolyE({step.B, step.A}) * s.P(k - 2) && step.C == 0 && step.A != 0,
                          "even step m=" + std::to_string(step.m));
            }
        }
        return "30 models with C != 0, e.g. \"" + sample + "\"; 10 with C = 0";
    });

    criterion(10, "ODE residual, refinement slope and shooting for the closed-form levels", [](Tally& t) {
        const auto start = std::chrono::steady_clock::now();
        long double worst_res = 0, worst_slope = 0, worst_shot = 0;
        int levels = 0;
        auto check = [&](const RadialProblem& p, const SeriesEigenfunction& phi, long double E, long double half,
                         const std::string& tag) {
            const LevelValidation v = validate_level(p, phi, E, half, kGridPoints);
            const long double dslope = std::fabs(v.residual.slope - kSlopeTarget);
            t.require(v.residual.points == kGridPoints, tag + " grid");
            t.require(v.residual.extrapolated < kResidualMax, tag + " residual " + str(v.residual.extrapolated));
            t.require(dslope <= kSlopeTol, tag + " slope " + str(v.residual.slope));
            t.require(v.relative_error < kShootRel, tag + " shoot " + str(v.relative_error));
            worst_res = std::max(worst_res, v.residual.extrapolated);
            worst_slope = std::max(worst_slope, dslope);
            worst_shot = std::max(worst_shot, v.relative_error);
            ++levels;
        };
        struct Case {
            Scalar alpha, beta, s;
            int J;
            Scalar a;
        };
        const std::vector<Case> cases{
            {Q(1), Q(1, 64), Q(2), 1, Q(0)},      {Q(-1, 2), Q(1, 8), Q(7, 2), 1, Q(1)},
            {Q(1), Q(1, 64), Q(2), 2, Q(0)},      {Q(1, 2), Q(1, 32), Q(3), 2, Q(1, 2)},
            {Q(0), Q(1, 64), Q(2), 3, Q(0)},      {Q(0), Q(1, 32), Q(5, 2), 3, Q(1)},
            {Q(0), Q(1, 16), Q(5, 2), 4, Q(1)},
        };
        for (const auto& c : cases) {
            const SexticRecursion rec = SexticRecursion(c.alpha, c.beta, c.s, c.J).to_mode(kF128);
            const Scalar a = f(c.a), gamma = rec.s() - 1 - a;
            const RadialProblem p = sextic_problem(rec, a, gamma);
            const auto E = qes_energies(rec);
            for (std::size_t k = 0; k < E.size(); ++k) {
                long double half = 1.0L;
                if (E.size() > 1) {
                    const long double gap = k + 1 < E.size() ? E[k + 1].to_long_double() - E[k].to_long_double()
                                                             : E[k].to_long_double() - E[k - 1].to_long_double();
                    half = gap / 2;
                }
                const SeriesEigenfunction phi = build_sextic_eigenfunction(rec, a, gamma, E[k]);
                check(p, phi, E[k].to_long_double(), half,
                      "J=" + std::to_string(c.J) + " alpha=" + c.alpha.to_string() + " k=" + std::to_string(k + 1));
            }
        }
        for (int n = 1; n <= 2; ++n) {
            const Scalar C2 = n == 1 ? Q(6) : Q(28);
            for (int sign : {1, -1}) {
                const CoulombLevel level = coulomb_level(CoulombModel::from_C_squared(Q(0), Q(1), Q(1), C2, sign), n);
                check(coulomb_problem(level.model), build_coulomb_eigenfunction(level), level.E.to_long_double(), 1.0L,
                      "Coulomb n=" + std::to_string(n) + " sign=" + std::to_string(sign));
            }
        }
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        t.require(seconds < kRuntimeLimitSeconds, "runtime " + std::to_string(seconds) + " s");
        return std::to_string(levels) + " levels; max residual " + str(worst_res) + ", max |slope-2| " +
               str(worst_slope) + ", max shoot rel " + str(worst_shot) + ", " + str(seconds) + " s";
    });

    criterion(11, "model-reduction goldens and equal reductions give identical spectra", [](Tally& t) {
        t.require(gamma_calogero_marchioro(3, 3, lambda_D(3, Q(2))) == 5, "Gamma_D(N=3, D=3, g=2)");
        t.require(lambda_D(3, Q(2)) == 1, "Lambda_3(g=2) = 1");
        t.require(delta_novel_correlation(2, Q(1)) == 3, "Delta_novel(N=2, g=1)");
        t.require(delta_calogero_sutherland(3, Q(2)) == 5, "Delta_CS(N=3, g=2)");

        SexticCoefficients radial;
        radial.F = Q(11);
        radial.C = Q(2);
        radial.H = Q(1, 4);
        radial.J = 3;
        CalogeroMarchioroParams cm;
        cm.N = 3;
        cm.D = 3;
        cm.g = Q(2);
        cm.radial = radial;
        CalogeroSutherlandParams cs;
        cs.N = 3;
        cs.g = Q(2);
        cs.radial = radial;
        NovelCorrelationParams nc;
        nc.N = 2;
        nc.g = Q(2);
        nc.radial = radial;
        const std::vector<ReducedModel> models{cm_reduce(cm), cs_reduce(cs), novel_reduce(nc)};
        auto serialize = [](const ReducedModel& m, ScalarMode mode) {
            const QESSpectrum sp = compute_spectrum(m.recursion().to_mode(mode));
            std::string out;
            for (const auto& e : sp.energies) out += e.to_string() + ";";
            for (const auto& w : sp.weights) out += w.to_string() + ";";
            return out;
        };
        for (ScalarMode mode : {kF128, ScalarMode::exact()}) {
            const std::string ref = serialize(models[0], mode);
            for (std::size_t i = 1; i < models.size(); ++i) {
                t.require(models[i].recursion() == models[0].recursion(), "equal reduced parameters");
                t.require(serialize(models[i], mode) == ref, "byte-identical spectrum");
            }
        }
        return "Gamma_D = 5, Delta_novel = 3, Delta_CS = 5; CM, CS and novel at (a=1, Gamma=5) agree";
    });

    criterion(12, "mu_n / (4 alpha s)^n approaches 1 monotonically in alpha", [](Tally& t) {
        const Scalar beta = Q(1, 64), s = Q(2);
        int strict = 0, identical = 0;
        for (int J = 1; J <= 3; ++J) {
            std::vector<Scalar> prev(5);
            bool first = true;
            for (long alpha : {100L, 1000L, 10000L}) {
                const DiscreteMeasure mu(SexticRecursion(Q(alpha), beta, s, J));
                for (int n = 1; n <= 4; ++n) {
                    const Scalar dev = abs(mu.moment(n) / pow(Q(alpha) * 4 * s, n) - 1);
                    if (J == 1 || n == 1) {
                        // mu_1 = 4 alpha s for every J and mu_n = (4 alpha s)^n for J = 1.
                        t.require(dev == 0, "ratio identically 1 at J=" + std::to_string(J) + " n=" + std::to_string(n));
                        ++identical;
                    } else if (!first) {
                        t.require(dev < prev[n], "strict decrease J=" + std::to_string(J) + " n=" + std::to_string(n));
                        ++strict;
                    }
                    prev[n] = dev;
                }
                first = false;
            }
        }
        return std::to_string(strict) + " strict decreases; " + std::to_string(identical) +
               " ratios exactly 1 (J=1 or n=1), which cannot decrease";
    });

    std::printf("%s: %d of 12 criteria failed\n", total_failures ? "FAIL" : "PASS", total_failures);
    return total_failures ? 1 : 0;
}
