#include "qes/coulomb.hpp"

#include <sstream>
#include <stdexcept>

namespace qes {

namespace {

/// n (2a + 2gamma + n)
Scalar diagonal(const CoulombModel& m, long n) { return (m.a() * 2 + m.gamma() * 2 + n) * n; }

Scalar diagonal(const Scalar& a, const Scalar& gamma, long n) { return (a * 2 + gamma * 2 + n) * n; }

Scalar float_tolerance(const Scalar& scale) {
    Scalar s = abs(scale);
    if (s < 1) s = s.like(1);
    return ldexp(s, 16 - static_cast<long>(scale.mode().bits));
}

}  // namespace

CoulombModel::CoulombModel(Scalar a, Scalar gamma, Scalar B, Scalar C2, int sign)
    : a_(std::move(a)), gamma_(std::move(gamma)), B_(std::move(B)), C2_(std::move(C2)), sign_(sign) {
    require_same_mode(a_, gamma_);
    require_same_mode(a_, B_);
    require_same_mode(a_, C2_);
    if (a_.sign() < 0) throw std::invalid_argument("a must be non-negative");
    if (B_.sign() <= 0) throw std::invalid_argument("B must be positive");
    if ((a_ * 2 + gamma_ * 2 + 1).sign() <= 0) throw std::invalid_argument("2a + 2gamma + 1 must be positive");
    if (C2_.sign() < 0) throw std::invalid_argument("C^2 must be non-negative");
    if (sign_ < -1 || sign_ > 1) throw std::invalid_argument("sign of C must be -1, 0 or +1");
    if ((sign_ == 0) != C2_.is_zero()) throw std::invalid_argument("sign of C inconsistent with C^2");
}

CoulombModel CoulombModel::from_C(Scalar a, Scalar gamma, Scalar B, const Scalar& C) {
    return CoulombModel(std::move(a), std::move(gamma), std::move(B), C * C, C.sign());
}

CoulombModel CoulombModel::from_C_squared(Scalar a, Scalar gamma, Scalar B, Scalar C2, int sign) {
    return CoulombModel(std::move(a), std::move(gamma), std::move(B), std::move(C2), sign);
}

Scalar CoulombModel::C() const {
    Scalar root = sqrt(C2_);
    return sign_ < 0 ? -root : root;
}

CoulombModel CoulombModel::to_mode(ScalarMode mode) const {
    return CoulombModel(a_.to_mode(mode), gamma_.to_mode(mode), B_.to_mode(mode), C2_.to_mode(mode), sign_);
}

PolyE CoulombSeries::P(std::size_t n) const {
    const PolyE& r = reduced.at(n);
    return n % 2 == 0 ? r : r * model.C();
}

Scalar CoulombSeries::eval(std::size_t n, const Scalar& E) const {
    Scalar v = eval_poly(reduced.at(n), E);
    return n % 2 == 0 ? v : v * model.C();
}

CoulombSeries coulomb_polynomials(const CoulombModel& m, int n_max) {
    if (n_max < 0) throw std::invalid_argument("n_max must be non-negative");
    const ScalarMode mode = m.mode();
    CoulombSeries out{m, {}};
    out.reduced.push_back(PolyE::constant(Scalar::integer(1, mode)));
    const PolyE E = PolyE::identity(mode);
    for (long k = 1; k <= n_max; ++k) {
        // k d_k P_k = -C P_{k-1} - [E - 2B(k-1+a+gamma)] P_{k-2}, rewritten for R.
        PolyE prev = out.reduced[k - 1];
        if (k % 2 == 0) prev *= m.C_squared();
        PolyE acc = -prev;
        if (k >= 2) {
            PolyE shift = E - PolyE::constant(m.B() * 2 * (m.a() + m.gamma() + (k - 1)));
            acc -= shift * out.reduced[k - 2];
        }
        out.reduced.push_back(acc * (1 / diagonal(m, k)));
    }
    return out;
}

Scalar coulomb_energy(const Scalar& a, const Scalar& gamma, int n, const Scalar& B) {
    return B * 2 * (a + gamma + (n + 1L));
}

PolyE termination_constraint(const Scalar& a, const Scalar& gamma, int n, const Scalar& B) {
    if (n < 1) throw std::invalid_argument("termination degree n must be at least 1");
    if (B.sign() <= 0) throw std::invalid_argument("B must be positive; B = 0 forces C = 0");
    require_same_mode(a, gamma);
    require_same_mode(a, B);
    const ScalarMode mode = a.mode();
    const Scalar E = coulomb_energy(a, gamma, n, B);
    const PolyE x = PolyE::identity(mode);
    // R_k as polynomials in x = C^2 at fixed E; the constraint is R_{n+1}.
    std::vector<PolyE> r{PolyE::constant(Scalar::integer(1, mode))};
    for (long k = 1; k <= n + 1; ++k) {
        PolyE prev = r[k - 1];
        if (k % 2 == 0) prev *= x;
        PolyE acc = -prev;
        if (k >= 2) acc -= r[k - 2] * (E - B * 2 * (a + gamma + (k - 1)));
        r.push_back(acc * (1 / diagonal(a, gamma, k)));
    }
    return monic(r.back());
}

TerminationSolution termination_solve(const Scalar& a, const Scalar& gamma, int n, const Scalar& B,
                                      const RootOptions& options) {
    TerminationSolution out;
    out.n = n;
    out.constraint = termination_constraint(a, gamma, n, B);
    out.E = coulomb_energy(a, gamma, n, B);
    for (auto& root : distinct_real_roots(out.constraint, options)) {
        if (root.value.sign() <= 0) continue;
        out.C_squared.push_back(root.value);
        out.roots.push_back(std::move(root));
    }
    if (out.C_squared.empty()) {
        throw std::domain_error("no positive C^2 truncates the series at degree " + std::to_string(n));
    }
    return out;
}

CoulombLevel coulomb_level(const CoulombModel& m, int n) {
    if (n < 0) throw std::invalid_argument("degree must be non-negative");
    const CoulombSeries series = coulomb_polynomials(m, n + 1);
    const Scalar E = coulomb_energy(m.a(), m.gamma(), n, m.B());

    // Truncation test in the C^2-only form x^[n odd] R_n + 2B R_{n-1}.
    Scalar head = eval_poly(series.reduced[n], E);
    if (n % 2 == 1) head = head * m.C_squared();
    Scalar tail = n >= 1 ? eval_poly(series.reduced[n - 1], E) * m.B() * 2 : E.like(0);
    Scalar mismatch = abs(head + tail);
    bool vanishes = mismatch.is_exact() ? mismatch.is_zero() : mismatch <= float_tolerance(abs(head) + abs(tail));
    // For even n the whole of P_{n+1} carries a factor C.
    if (n % 2 == 0 && m.C_sign() == 0) vanishes = true;
    if (!vanishes) {
        throw std::domain_error("model is not on the degree-" + std::to_string(n) +
                                " termination surface: P_{n+1}(E) = " + mismatch.to_string());
    }

    CoulombLevel level{m, n, E, {}, 0, m.C_sign() > 0 ? "excited" : (m.C_sign() < 0 ? "ground" : "oscillator")};
    CoulombSeries eta_series = series;
    Scalar eta_E = E;
    if (m.mode().is_exact()) {
        try {
            (void)m.C();
        } catch (const InexactError&) {
            eta_series = coulomb_polynomials(m.to_mode(ScalarMode::floating()), n);
            eta_E = E.to_mode(ScalarMode::floating());
        }
    }
    for (int k = 0; k <= n; ++k) level.eta.push_back(eta_series.eval(static_cast<std::size_t>(k), eta_E));

    const PolyE eta(level.eta);
    if (!eta.is_zero() && *eta.degree() > 0) {
        for (const auto& root : distinct_real_roots(eta)) {
            if (root.value.sign() > 0) ++level.nodes;
        }
    }
    return level;
}

ObstructionReport orthogonality_obstruction(const CoulombModel& m, int n_max) {
    if (n_max < 1) throw std::invalid_argument("n_max must be at least 1");
    ObstructionReport rep;
    const CoulombSeries series = coulomb_polynomials(m, n_max);
    const bool c_zero = m.C_sign() == 0;
    for (int n = 1; n <= n_max; ++n) {
        ObstructionRow row;
        row.n = n;
        const PolyE& r = series.reduced[static_cast<std::size_t>(n)];
        row.degree = c_zero && n % 2 == 1 ? std::nullopt : r.degree();
        row.degree_ok = row.degree && *row.degree == static_cast<std::size_t>(n);
        row.e_on_previous = false;
        row.coupling_to_previous = c_zero ? "0" : "-C/(" + diagonal(m, n).to_string() + ")";
        if (!rep.first_violation_n) {
            std::ostringstream msg;
            if (!row.degree_ok) {
                msg << "degree(P_" << n << ") = " << (row.degree ? std::to_string(*row.degree) : "-inf") << " != " << n;
            } else {
                msg << "P_" << n - 1 << " is multiplied by the constant " << row.coupling_to_previous
                    << " instead of A_n E + B_n";
            }
            rep.first_violation_n = n;
            rep.first_violation = msg.str();
        }
        rep.rows.push_back(std::move(row));
    }
    if (c_zero) {
        rep.collapses_to_three_term = true;
        for (int k = 2; k <= n_max; k += 2) {
            Scalar d = diagonal(m, k);
            rep.even_steps.push_back({k / 2, -1 / d, m.B() * 2 * (m.a() + m.gamma() + (k - 1L)) / d, d.like(0)});
        }
        rep.note = "C = 0: odd P_n vanish and P_{2m} = (A_m E + B_m) P_{2m-2}, a three-term form with C_m = 0";
    } else {
        rep.note = "C != 0: E couples to P_{n-2} while P_{n-1} carries only the constant C";
    }
    return rep;
}

}  // namespace qes
