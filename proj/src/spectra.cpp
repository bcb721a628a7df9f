#include "qes/spectra.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace qes {

bool QESSpectrum::energies_exact() const {
    return std::all_of(roots.begin(), roots.end(), [](const IsolatedRoot& r) { return r.exact; });
}

std::vector<IsolatedRoot> qes_roots(const SexticRecursion& rec, const RootOptions& options) {
    return real_roots(critical_polynomial(rec), options);
}

std::vector<Scalar> qes_energies(const SexticRecursion& rec, const RootOptions& options) {
    std::vector<Scalar> out;
    for (auto& r : qes_roots(rec, options)) out.push_back(std::move(r.value));
    return out;
}

QESSpectrum compute_spectrum(const SexticRecursion& rec, const RootOptions& options) {
    QESSpectrum sp;
    sp.J = rec.J();
    sp.mode = rec.mode();
    sp.critical = critical_polynomial(rec);
    sp.roots = real_roots(sp.critical, options);
    for (const auto& r : sp.roots) sp.energies.push_back(r.value);
    sp.weights = weights(rec, sp.energies);
    return sp;
}

std::optional<std::vector<Scalar>> closed_form_energies(const SexticRecursion& rec_in, unsigned float_bits) {
    const int J = rec_in.J();
    const bool self_dual = rec_in.alpha().is_zero();
    if (J > 5 || (J > 2 && !self_dual)) return std::nullopt;

    if (J == 1) return std::vector<Scalar>{rec_in.alpha() * 4 * rec_in.s()};

    const SexticRecursion rec = rec_in.mode().is_exact() ? rec_in.to_mode(ScalarMode::floating(float_bits)) : rec_in;
    const Scalar& alpha = rec.alpha();
    const Scalar& beta = rec.beta();
    const Scalar& s = rec.s();
    std::vector<Scalar> out;
    switch (J) {
        case 2: {
            Scalar center = alpha * 4 * (s + 1);
            Scalar half = sqrt(alpha * alpha + beta * 4 * s) * 4;
            out = {center - half, center + half};
            break;
        }
        case 3: {
            Scalar r = sqrt(beta * 2 * (s * 2 + 1)) * 8;
            out = {-r, s.like(0), r};
            break;
        }
        case 4: {
            Scalar inner = beta * 64 * sqrt(s * (s + 2) * 16 + 25);
            Scalar base = beta * 320 * (s + 1);
            Scalar outer = sqrt(base + inner);
            Scalar near = sqrt(base - inner);
            out = {-outer, -near, near, outer};
            break;
        }
        case 5: {
            // P_5 = E R(E^2) with R quadratic; read R off the generated polynomial.
            const PolyE p5 = generate_P(rec, 5).back();
            Scalar c2 = p5[5], c1 = p5[3], c0 = p5[1];
            Scalar disc = sqrt(c1 * c1 - c2 * c0 * 4);
            Scalar x1 = (-c1 - disc) / (c2 * 2);
            Scalar x2 = (-c1 + disc) / (c2 * 2);
            Scalar r1 = sqrt(std::min(x1, x2)), r2 = sqrt(std::max(x1, x2));
            out = {-r2, -r1, s.like(0), r1, r2};
            break;
        }
        default: return std::nullopt;
    }
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

/// Gaussian elimination with partial pivoting; returns nullopt if singular.
std::optional<std::vector<Scalar>> solve_dense(std::vector<std::vector<Scalar>> m, std::vector<Scalar> rhs) {
    const std::size_t n = rhs.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r) {
            if (abs(m[r][col]) > abs(m[pivot][col])) pivot = r;
        }
        if (m[pivot][col].is_zero()) return std::nullopt;
        std::swap(m[pivot], m[col]);
        std::swap(rhs[pivot], rhs[col]);
        for (std::size_t r = col + 1; r < n; ++r) {
            if (m[r][col].is_zero()) continue;
            Scalar f = m[r][col] / m[col][col];
            for (std::size_t c = col; c < n; ++c) m[r][c] -= f * m[col][c];
            rhs[r] -= f * rhs[col];
        }
    }
    std::vector<Scalar> x(n);
    for (std::size_t i = n; i-- > 0;) {
        Scalar acc = rhs[i];
        for (std::size_t c = i + 1; c < n; ++c) acc -= m[i][c] * x[c];
        x[i] = acc / m[i][i];
    }
    return x;
}

Scalar max_abs(const std::vector<Scalar>& xs, ScalarMode mode) {
    Scalar m = Scalar::integer(0, mode);
    for (const auto& x : xs) m = std::max(m, abs(x));
    return m;
}

bool within(const Scalar& deviation, const Scalar& scale) {
    if (deviation.is_exact()) return deviation.is_zero();
    return deviation <= check_tolerance(scale);
}

}  // namespace

Scalar check_tolerance(const Scalar& scale) {
    if (scale.is_exact()) return scale.like(0);
    Scalar s = abs(scale);
    if (s < 1) s = s.like(1);
    return ldexp(s, 16 - static_cast<long>(scale.mode().bits));
}

std::vector<Scalar> weights(const SexticRecursion& rec, const std::vector<Scalar>& energies) {
    const std::size_t J = static_cast<std::size_t>(rec.J());
    if (energies.size() != J) {
        throw std::invalid_argument("expected " + std::to_string(J) + " energies, got " + std::to_string(energies.size()));
    }
    for (std::size_t i = 0; i < J; ++i) {
        for (std::size_t j = i + 1; j < J; ++j) {
            if (energies[i] == energies[j]) throw DegenerateRootsError("degenerate spectrum: repeated energy " + energies[i].to_string());
        }
    }
    const std::vector<PolyE> P = generate_P(rec, static_cast<int>(J) - 1);
    std::vector<std::vector<Scalar>> m(J, std::vector<Scalar>(J));
    std::vector<Scalar> rhs(J, Scalar::integer(0, rec.mode()));
    rhs[0] = Scalar::integer(1, rec.mode());
    for (std::size_t n = 0; n < J; ++n) {
        for (std::size_t k = 0; k < J; ++k) m[n][k] = eval_poly(P[n], energies[k]);
    }
    auto x = solve_dense(std::move(m), std::move(rhs));
    if (!x) throw DegenerateRootsError("degenerate spectrum: singular weight system");
    return *x;
}

DiscreteMeasure::DiscreteMeasure(const SexticRecursion& rec) : basis_(generate_P(rec, rec.J())) {}

Scalar DiscreteMeasure::operator()(const PolyE& f) const {
    PolyE r = poly_divide(f, basis_.back()).remainder;
    while (!r.is_zero() && *r.degree() > 0) {
        const std::size_t d = *r.degree();
        r -= basis_[d] * (r.leading() / basis_[d].leading());
    }
    return r[0];
}

Scalar DiscreteMeasure::moment(int n) const {
    if (n < 0) throw std::invalid_argument("moment index must be non-negative");
    const ScalarMode mode = basis_.front().mode();
    return (*this)(PolyE::monomial(Scalar::integer(1, mode), static_cast<std::size_t>(n)));
}

Scalar DiscreteMeasure::norm(int n) const {
    if (n < 0) throw std::invalid_argument("norm index must be non-negative");
    if (static_cast<std::size_t>(n) >= basis_.size() - 1) return basis_.front().leading().like(0);
    return (*this)(basis_[static_cast<std::size_t>(n)] * basis_[static_cast<std::size_t>(n)]);
}

Scalar discrete_norm(const SexticRecursion& rec, const std::vector<Scalar>& energies,
                     const std::vector<Scalar>& w, int n) {
    if (n < 0) throw std::invalid_argument("norm index must be non-negative");
    const PolyE pn = generate_P(rec, n).back();
    Scalar acc = Scalar::integer(0, rec.mode());
    for (std::size_t k = 0; k < energies.size(); ++k) {
        Scalar v = eval_poly(pn, energies[k]);
        acc += w[k] * v * v;
    }
    return acc;
}

Scalar discrete_norm(const SexticRecursion& rec, const QESSpectrum& spectrum, int n) {
    if (spectrum.mode.is_exact() && !spectrum.energies_exact()) return DiscreteMeasure(rec).norm(n);
    return discrete_norm(rec, spectrum.energies, spectrum.weights, n);
}

Scalar moment(const std::vector<Scalar>& energies, const std::vector<Scalar>& w, int n) {
    if (n < 0) throw std::invalid_argument("moment index must be non-negative");
    if (energies.empty()) throw std::invalid_argument("moment of an empty measure");
    Scalar acc = energies.front().like(0);
    for (std::size_t k = 0; k < energies.size(); ++k) acc += w[k] * pow(energies[k], static_cast<unsigned>(n));
    return acc;
}

Scalar moment(const SexticRecursion& rec, const QESSpectrum& spectrum, int n) {
    if (spectrum.mode.is_exact() && !spectrum.energies_exact()) return DiscreteMeasure(rec).moment(n);
    return moment(spectrum.energies, spectrum.weights, n);
}

SexticRecursion dualize(const SexticRecursion& rec) { return rec.with_alpha(-rec.alpha()); }

DualityReport duality_check(const SexticRecursion& rec, const RootOptions& options) {
    const QESSpectrum original = compute_spectrum(rec, options);
    const QESSpectrum dual = compute_spectrum(dualize(rec), options);
    const std::size_t J = original.energies.size();
    DualityReport rep;
    rep.energies = original.energies;
    rep.dual_energies = dual.energies;
    rep.weights = original.weights;
    rep.dual_weights = dual.weights;
    std::vector<Scalar> de, dw;
    for (std::size_t k = 0; k < J; ++k) {
        de.push_back(abs(dual.energies[k] + original.energies[J - 1 - k]));
        dw.push_back(abs(dual.weights[k] - original.weights[J - 1 - k]));
    }
    rep.max_energy_deviation = max_abs(de, rec.mode());
    rep.max_weight_deviation = max_abs(dw, rec.mode());
    rep.passed = within(rep.max_energy_deviation, max_abs(original.energies, rec.mode())) &&
                 within(rep.max_weight_deviation, rec.alpha().like(1));
    return rep;
}

SelfDualReport selfdual_check(const SexticRecursion& rec, const RootOptions& options) {
    if (!rec.alpha().is_zero()) throw std::invalid_argument("selfdual_check requires alpha = 0");
    const QESSpectrum sp = compute_spectrum(rec, options);
    const std::size_t J = sp.energies.size();
    const ScalarMode mode = rec.mode();
    SelfDualReport rep;
    rep.energies = sp.energies;
    rep.weights = sp.weights;
    std::vector<Scalar> de, dw;
    for (std::size_t k = 0; k < J; ++k) {
        de.push_back(abs(sp.energies[k] + sp.energies[J - 1 - k]));
        dw.push_back(abs(sp.weights[k] - sp.weights[J - 1 - k]));
    }
    rep.max_energy_asymmetry = max_abs(de, mode);
    rep.max_weight_asymmetry = max_abs(dw, mode);
    const Scalar scale = max_abs(sp.energies, mode);
    for (std::size_t m = 0; m < J; ++m) {
        rep.odd_sums.push_back(moment(sp.energies, sp.weights, static_cast<int>(2 * m + 1)));
    }
    rep.max_odd_sum = max_abs(rep.odd_sums, mode);
    const Scalar odd_scale = pow(scale < 1 ? scale.like(1) : scale, static_cast<unsigned>(2 * J - 1));

    bool has_zero = false;
    for (const auto& e : sp.energies) {
        if (within(abs(e), scale)) has_zero = true;
    }
    if (J % 2 == 1) {
        rep.zero_level_consistent = within(abs(sp.energies[J / 2]), scale);
    } else {
        rep.zero_level_consistent = !has_zero;
    }
    rep.passed = within(rep.max_energy_asymmetry, scale) && within(rep.max_weight_asymmetry, mode.is_exact() ? scale : scale.like(1)) &&
                 within(rep.max_odd_sum, odd_scale) && rep.zero_level_consistent;
    return rep;
}

PositivityReport positivity_report(const SexticRecursion& rec) {
    PositivityReport rep;
    const long J = rec.J();
    for (long k = 0; k < J; ++k) rep.b.push_back(rec.alpha() * 4 * (rec.s() + 2 * k));
    bool positive = true;
    for (long k = 1; k <= J; ++k) {
        Scalar ak = rec.beta() * 64 * k * (rec.s() + (k - 1)) * (J - k);
        if (k < J && ak.sign() <= 0) positive = false;
        if (ak.is_zero() && !rep.truncation_index) rep.truncation_index = static_cast<int>(k);
        rep.a.push_back(std::move(ak));
    }
    rep.a_positive_below_J = positive;
    // b_k are values of a real Scalar type; reality holds by construction.
    rep.b_real = true;
    const bool truncates_at_J = rep.truncation_index && *rep.truncation_index == J;
    rep.weights_positive_implied = rep.b_real && rep.a_positive_below_J && truncates_at_J;
    rep.norms_positive_implied = rep.weights_positive_implied;
    return rep;
}

}  // namespace qes
