#include "qes/radial.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace qes {

namespace {

/// Regular part of W: pairs (j, w_j) with W = F/rho^2 + sum_j w_j rho^j.
std::vector<std::pair<int, long double>> regular_terms(const RadialProblem& p) {
    if (const auto* s = std::get_if<SexticPotential>(&p.potential)) return {{2, s->B}, {4, s->C}, {6, s->H}};
    const auto& c = std::get<CoulombPotential>(p.potential);
    return {{-1, -c.C}, {2, c.B * c.B}};
}

/// W + (gamma^2 - 1/4)/rho^2, the potential seen by u = rho^(gamma + 1/2) phi.
long double effective_W(const RadialProblem& p, long double rho) {
    return p.W(rho) + (p.gamma * p.gamma - 0.25L) / (rho * rho);
}

struct State {
    long double phi;
    long double dphi;
};

State derivative(const RadialProblem& p, long double E, long double rho, const State& y) {
    return {y.dphi, -(2 * p.gamma + 1) / rho * y.dphi + (p.W(rho) - E) * y.phi};
}

/// Frobenius solution phi = rho^a sum_k c_k rho^k and its derivative at rho.
State frobenius_start(const RadialProblem& p, long double E, long double rho) {
    constexpr int terms = 24;
    const long double a = p.a();
    const auto w = regular_terms(p);
    std::array<long double, terms> c{};
    c[0] = 1;
    for (int k = 1; k < terms; ++k) {
        long double rhs = k >= 2 ? -E * c[k - 2] : 0;
        for (const auto& [j, wj] : w) {
            const int idx = k - 2 - j;
            if (idx >= 0) rhs += wj * c[idx];
        }
        c[k] = rhs / (k * (k + 2 * a + 2 * p.gamma));
    }
    long double value = 0, slope = 0;
    for (int k = terms - 1; k >= 0; --k) {
        value += c[k] * std::pow(rho, static_cast<long double>(k));
        slope += c[k] * (k + a) * std::pow(rho, static_cast<long double>(k) - 1);
    }
    const long double ra = std::pow(rho, a);
    return {ra * value, ra * slope};
}

}  // namespace

long double RadialProblem::W(long double rho) const {
    const long double r2 = rho * rho;
    if (const auto* s = std::get_if<SexticPotential>(&potential)) {
        return ((s->H * r2 + s->C) * r2 + s->B) * r2 + s->F / r2;
    }
    const auto& c = std::get<CoulombPotential>(potential);
    return c.B * c.B * r2 - c.C / rho + c.F / r2;
}

long double RadialProblem::F() const {
    return std::visit([](const auto& v) { return v.F; }, potential);
}

long double RadialProblem::a() const {
    const long double f = F();
    if (f == 0) return 0;
    return std::sqrt(gamma * gamma + f) - gamma;
}

RadialProblem sextic_problem(const SexticRecursion& rec, const Scalar& a, const Scalar& gamma) {
    const Scalar& alpha = rec.alpha();
    const Scalar& beta = rec.beta();
    if (!(a + gamma + 1 == rec.s().to_mode(a.mode()))) throw std::invalid_argument("a + gamma + 1 must equal s");
    SexticPotential v;
    v.B = (alpha * alpha * 4 - beta * 8 * (a + gamma + 2L * rec.J())).to_long_double();
    v.C = (alpha * beta * 16).to_long_double();
    v.H = (beta * beta * 16).to_long_double();
    v.F = (a * a + a * gamma * 2).to_long_double();
    return {gamma.to_long_double(), v};
}

RadialProblem coulomb_problem(const CoulombModel& m) {
    CoulombPotential v;
    v.B = m.B().to_long_double();
    v.C = std::sqrt(m.C_squared().to_long_double()) * m.C_sign();
    v.F = m.F().to_long_double();
    return {m.gamma().to_long_double(), v};
}

long double SeriesEigenfunction::operator()(long double rho) const {
    const long double t = stride == 2 ? rho * rho : rho;
    long double eta = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) eta = eta * t + *it;
    const long double r2 = rho * rho;
    return std::pow(rho, a) * std::exp(-(q + r * r2) * r2) * eta;
}

int SeriesEigenfunction::nodes() const {
    std::vector<Scalar> coeffs;
    for (long double v : c) coeffs.push_back(Scalar::floating(v));
    const PolyE eta(coeffs, ScalarMode::floating());
    if (eta.is_zero() || *eta.degree() == 0) return 0;
    int count = 0;
    for (const auto& root : distinct_real_roots(eta)) {
        if (root.value.sign() > 0) ++count;
    }
    return count;
}

SeriesEigenfunction build_sextic_eigenfunction(const SexticRecursion& rec, const Scalar& a, const Scalar& gamma,
                                               const Scalar& E) {
    if (!(a + gamma + 1 == rec.s().to_mode(a.mode()))) throw std::invalid_argument("a + gamma + 1 must equal s");
    const Scalar e = E.to_mode(rec.mode());
    const std::vector<PolyE> P = generate_P(rec, rec.J());
    const PolyE& critical = P.back();
    Scalar scale = e.like(0);
    Scalar power = e.like(1);
    for (const auto& coeff : critical.coeffs()) {
        scale += abs(coeff) * power;
        power = power * abs(e);
    }
    const long double mismatch = std::fabs(eval_poly(critical, e).to_long_double());
    if (mismatch > 1e-12L * scale.to_long_double()) {
        throw std::domain_error("E = " + E.to_string() + " is not a root of P_J");
    }

    SeriesEigenfunction phi;
    phi.a = a.to_long_double();
    phi.q = rec.alpha().to_long_double();
    phi.r = rec.beta().to_long_double();
    phi.stride = 2;
    const long double s = rec.s().to_long_double();
    long double denom_log = 0;  // log(4^n n!)
    for (int n = 0; n < rec.J(); ++n) {
        if (n > 0) denom_log += std::log(4.0L * n);
        const long double pn = eval_poly(P[static_cast<std::size_t>(n)], e).to_long_double();
        phi.c.push_back(pn * std::exp(-denom_log - std::lgamma(n + s)));
    }
    return phi;
}

SeriesEigenfunction build_coulomb_eigenfunction(const CoulombLevel& level) {
    SeriesEigenfunction phi;
    phi.a = level.model.a().to_long_double();
    phi.q = level.model.B().to_long_double() / 2;
    phi.r = 0;
    phi.stride = 1;
    for (const auto& v : level.eta) phi.c.push_back(v.to_long_double());
    return phi;
}

std::vector<long double> pointwise_residual(const RadialProblem& p, const Grid& grid,
                                            const std::vector<long double>& phi, long double E) {
    if (grid.intervals < 2 || phi.size() != static_cast<std::size_t>(grid.intervals) + 1) {
        throw std::invalid_argument("grid needs at least two intervals and one sample per node");
    }
    // Differences act on u = phi / rho^a; phi'' + (2 gamma + 1)/rho phi' equals
    // rho^a [u'' + (2a + 2 gamma + 1)/rho u' + (a^2 + 2 a gamma)/rho^2 u].
    const long double h = grid.h, a = p.a(), F = p.F();
    std::vector<long double> u(phi.size());
    for (std::size_t i = 0; i < phi.size(); ++i) u[i] = a == 0 ? phi[i] : phi[i] / std::pow(grid.at(static_cast<int>(i)), a);
    std::vector<long double> out;
    out.reserve(static_cast<std::size_t>(grid.intervals) - 1);
    for (int i = 1; i < grid.intervals; ++i) {
        const long double rho = grid.at(i);
        const long double d2 = (u[i + 1] - 2 * u[i] + u[i - 1]) / (h * h);
        const long double d1 = (u[i + 1] - u[i - 1]) / (2 * h);
        const long double regular = p.W(rho) - F / (rho * rho);
        const long double centrifugal = (a * a + 2 * a * p.gamma - F) / (rho * rho);
        const long double lhs = d2 + (2 * a + 2 * p.gamma + 1) / rho * d1 + centrifugal * u[i] - (regular - E) * u[i];
        out.push_back(a == 0 ? lhs : lhs * std::pow(rho, a));
    }
    return out;
}

long double residual(const RadialProblem& p, const Grid& grid, const std::vector<long double>& phi, long double E) {
    const auto r = pointwise_residual(p, grid, phi, E);
    long double peak = 0, worst = 0;
    for (long double v : phi) peak = std::max(peak, std::fabs(v));
    for (long double v : r) worst = std::max(worst, std::fabs(v));
    if (peak == 0) throw std::domain_error("phi vanishes on the grid");
    return worst / peak;
}

long double decay_extent(const std::function<long double(long double)>& phi, long double tol) {
    constexpr long double start = 1e-4L, ratio = 1.005L, stop = 1e6L;
    long double peak = 0, rho = start;
    std::vector<std::pair<long double, long double>> samples;
    for (; rho < stop; rho *= ratio) {
        const long double v = std::fabs(phi(rho));
        samples.emplace_back(rho, v);
        peak = std::max(peak, v);
        if (peak > 0 && v < tol * peak * 1e-3L) break;
    }
    if (peak == 0 || !std::isfinite(peak)) throw std::domain_error("cannot locate the peak of phi");
    const auto top = std::max_element(samples.begin(), samples.end(),
                                      [](const auto& x, const auto& y) { return x.second < y.second; });
    for (auto it = top; it != samples.end(); ++it) {
        if (it->second < tol * peak) return it->first;
    }
    throw std::domain_error("phi does not decay below the requested tolerance");
}

ResidualReport residual_study(const RadialProblem& p, const std::function<long double(long double)>& phi,
                              long double E, int points) {
    if (points < 4 || points % 2 != 0) throw std::invalid_argument("points must be even and at least 4");
    ResidualReport rep;
    rep.points = points;
    rep.rho_max = decay_extent(phi);
    rep.rho0 = rep.rho_max / 1000;
    const long double length = rep.rho_max - rep.rho0;

    auto sample = [&](int intervals) {
        Grid g{rep.rho0, length / intervals, intervals};
        std::vector<long double> values(static_cast<std::size_t>(intervals) + 1);
        for (int i = 0; i <= intervals; ++i) values[i] = phi(g.at(i));
        return std::pair{g, values};
    };
    auto [g_coarse, v_coarse] = sample(points / 2);
    auto [g_mid, v_mid] = sample(points);
    auto [g_fine, v_fine] = sample(points * 2);
    rep.raw_coarse = residual(p, g_coarse, v_coarse, E);
    rep.raw = residual(p, g_mid, v_mid, E);
    rep.raw_fine = residual(p, g_fine, v_fine, E);
    rep.slope = std::log2(rep.raw / rep.raw_fine);

    const auto r_mid = pointwise_residual(p, g_mid, v_mid, E);
    const auto r_fine = pointwise_residual(p, g_fine, v_fine, E);
    long double peak = 0, worst = 0;
    for (long double v : v_mid) peak = std::max(peak, std::fabs(v));
    for (int i = 1; i < points; ++i) {
        const long double extrapolated = (4 * r_fine[2 * i - 1] - r_mid[i - 1]) / 3;
        worst = std::max(worst, std::fabs(extrapolated));
    }
    rep.extrapolated = worst / peak;
    return rep;
}

long double shooting_extent(const RadialProblem& p, long double E_hi, const ShootOptions& options) {
    // Outer turning point of the effective potential on a geometric scan.
    constexpr long double ratio = 1.001L;
    long double rho = 1e-4L, turning = 0;
    long double best = effective_W(p, rho), best_rho = rho;
    for (; rho < 1e6L; rho *= ratio) {
        const long double w = effective_W(p, rho);
        if (w < best) {
            best = w;
            best_rho = rho;
        }
        if (w <= E_hi) turning = rho;
        const long double reference = turning > 0 ? turning : best_rho;
        if (rho > reference * 4 && w > E_hi + 1e3L * (std::fabs(E_hi) + 1)) break;
    }
    if (turning == 0) turning = best_rho;
    long double integral = 0;
    const long double dr = turning * 1e-4L;
    for (rho = turning; integral < options.decay_exponent; rho += dr) {
        integral += std::sqrt(std::max(0.0L, effective_W(p, rho + dr / 2) - E_hi)) * dr;
        if (rho > 1e6L) throw ShootingError("no classically forbidden region found");
    }
    return rho;
}

int shooting_nodes(const RadialProblem& p, long double E, long double rho_max, const ShootOptions& options) {
    const long double rho_start = rho_max * 1e-3L;
    const long double h = (rho_max - rho_start) / options.steps;
    State y = frobenius_start(p, E, rho_start);
    long double rho = rho_start;
    int nodes = 0;
    int last_sign = y.phi > 0 ? 1 : -1;
    for (int i = 0; i < options.steps; ++i) {
        const State k1 = derivative(p, E, rho, y);
        const State k2 = derivative(p, E, rho + h / 2, {y.phi + h / 2 * k1.phi, y.dphi + h / 2 * k1.dphi});
        const State k3 = derivative(p, E, rho + h / 2, {y.phi + h / 2 * k2.phi, y.dphi + h / 2 * k2.dphi});
        const State k4 = derivative(p, E, rho + h, {y.phi + h * k3.phi, y.dphi + h * k3.dphi});
        y.phi += h / 6 * (k1.phi + 2 * k2.phi + 2 * k3.phi + k4.phi);
        y.dphi += h / 6 * (k1.dphi + 2 * k2.dphi + 2 * k3.dphi + k4.dphi);
        rho += h;
        if (!std::isfinite(y.phi)) throw ShootingError("shooting solution overflowed");
        if (y.phi != 0) {
            const int sign = y.phi > 0 ? 1 : -1;
            if (sign != last_sign) ++nodes;
            last_sign = sign;
        }
    }
    return nodes;
}

long double shoot(const RadialProblem& p, long double E_lo, long double E_hi, const ShootOptions& options) {
    if (!(E_lo < E_hi)) throw std::invalid_argument("bracket must satisfy E_lo < E_hi");
    const long double rho_max = shooting_extent(p, E_hi, options);
    const int n_lo = shooting_nodes(p, E_lo, rho_max, options);
    const int n_hi = shooting_nodes(p, E_hi, rho_max, options);
    if (n_hi - n_lo < 1) throw ShootingError("no eigenvalue in the bracket");
    if (n_hi - n_lo > 1) throw ShootingError("bracket holds " + std::to_string(n_hi - n_lo) + " eigenvalues");
    long double lo = E_lo, hi = E_hi;
    while (hi - lo > options.relative_tolerance * std::max(1.0L, std::fabs(lo) + std::fabs(hi))) {
        const long double mid = (lo + hi) / 2;
        if (mid == lo || mid == hi) break;
        if (shooting_nodes(p, mid, rho_max, options) == n_lo) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return (lo + hi) / 2;
}

LevelValidation validate_level(const RadialProblem& p, const SeriesEigenfunction& phi, long double E,
                               long double half_width, int points, const ShootOptions& options) {
    LevelValidation out;
    out.residual = residual_study(p, phi, E, points);
    long double delta = half_width;
    for (int attempt = 0; attempt < 40; ++attempt, delta /= 2) {
        const long double lo = E - delta, hi = E + delta;
        const long double rho_max = shooting_extent(p, hi, options);
        const int count = shooting_nodes(p, hi, rho_max, options) - shooting_nodes(p, lo, rho_max, options);
        if (count == 0) throw ShootingError("no eigenvalue within " + std::to_string(static_cast<double>(delta)) +
                                            " of E = " + std::to_string(static_cast<double>(E)));
        if (count > 1) continue;
        out.bracket_lo = lo;
        out.bracket_hi = hi;
        out.shot_energy = shoot(p, lo, hi, options);
        out.relative_error = std::fabs(out.shot_energy - E) / std::max(1.0L, std::fabs(E));
        return out;
    }
    throw ShootingError("could not isolate the eigenvalue near E");
}

}  // namespace qes
