#include "qes/recursion.hpp"

#include <stdexcept>
#include <string>

namespace qes {

SexticRecursion::SexticRecursion(Scalar alpha, Scalar beta, Scalar s, int J)
    : alpha_(std::move(alpha)), beta_(std::move(beta)), s_(std::move(s)), J_(J) {
    require_same_mode(alpha_, beta_);
    require_same_mode(alpha_, s_);
    if (beta_.sign() <= 0) throw std::invalid_argument("beta must be positive (H > 0)");
    if (s_.sign() <= 0) throw std::invalid_argument("s = 1 + a + Gamma must be positive");
    if (J_ < 1) throw std::invalid_argument("J must be a positive integer, got " + std::to_string(J_));
}

SexticRecursion SexticRecursion::to_mode(ScalarMode mode) const {
    return SexticRecursion(alpha_.to_mode(mode), beta_.to_mode(mode), s_.to_mode(mode), J_);
}

SexticRecursion SexticRecursion::with_alpha(Scalar alpha) const {
    return SexticRecursion(std::move(alpha), beta_, s_, J_);
}

ThreeTermCoefficients p_coefficients(const SexticRecursion& rec, int n) {
    if (n < 1) throw std::invalid_argument("recursion index must be >= 1");
    const Scalar& s = rec.s();
    return {rec.alpha().like(-1),
            rec.alpha() * 4 * (s + (2L * n - 2)),
            rec.beta() * 64 * static_cast<long>(n - 1) * (s + (n - 2L)) * static_cast<long>(n - rec.J() - 1)};
}

ThreeTermCoefficients q_coefficients(const SexticRecursion& rec, int n) {
    if (n < 1) throw std::invalid_argument("recursion index must be >= 1");
    const Scalar& s = rec.s();
    const long J = rec.J();
    return {rec.alpha().like(-1),
            rec.alpha() * 4 * (s + (2L * n + 2 * J - 2)),
            rec.beta() * 64 * (n + J - 1) * (s + (n + J - 2)) * static_cast<long>(n - 1)};
}

namespace {

template <class CoeffFn>
std::vector<PolyE> run_recursion(const SexticRecursion& rec, int n_max, CoeffFn coeffs) {
    if (n_max < 0) throw std::invalid_argument("n_max must be non-negative");
    const ScalarMode mode = rec.mode();
    const PolyE e = PolyE::identity(mode);
    std::vector<PolyE> out;
    out.reserve(static_cast<std::size_t>(n_max) + 1);
    out.push_back(PolyE::constant(Scalar::integer(1, mode)));
    PolyE prev(mode);  // P_{-1}
    for (int n = 1; n <= n_max; ++n) {
        ThreeTermCoefficients c = coeffs(rec, n);
        PolyE next = (e * c.A + PolyE::constant(c.B)) * out.back();
        if (!c.C.is_zero()) next += prev * c.C;
        prev = out.back();
        out.push_back(std::move(next));
    }
    return out;
}

}  // namespace

std::vector<PolyE> generate_P(const SexticRecursion& rec, int n_max) {
    return run_recursion(rec, n_max, p_coefficients);
}

std::vector<PolyE> generate_Q(const SexticRecursion& rec, int n_max) {
    return run_recursion(rec, n_max, q_coefficients);
}

PolyE critical_polynomial(const SexticRecursion& rec) { return generate_P(rec, rec.J()).back(); }

ThreeTermReport verify_three_term_form(const SexticRecursion& rec, int n_max) {
    if (n_max < 1) throw std::invalid_argument("n_max must be >= 1");
    ThreeTermReport report;
    bool still_orthogonal = true;
    for (int n = 1; n <= n_max; ++n) {
        ThreeTermCoefficients c = p_coefficients(rec, n);
        ThreeTermRow row{n, c, !c.A.is_zero(), !c.C.is_zero()};
        report.a_all_nonzero = report.a_all_nonzero && row.a_nonzero;
        if (n == 1) {
            report.c1_zero = c.C.is_zero();
        } else if (row.c_nonzero) {
            if (still_orthogonal) report.orthogonal_through = n;
        } else {
            still_orthogonal = false;
            if (!report.first_collapse) report.first_collapse = n;
        }
        report.rows.push_back(std::move(row));
    }
    return report;
}

Scalar norm_P(const SexticRecursion& rec, int n) {
    if (n < 0) throw std::invalid_argument("norm index must be non-negative");
    Scalar prod = rec.beta().like(1);
    for (long k = 1; k <= n; ++k) {
        prod *= rec.beta() * 64 * k * (rec.s() + (k - 1)) * (rec.J() - k);
    }
    return prod;
}

Scalar norm_Q(const SexticRecursion& rec, int n) {
    if (n < 0) throw std::invalid_argument("norm index must be non-negative");
    const long J = rec.J();
    Scalar prod = rec.beta().like(1);
    for (long k = 1; k <= n; ++k) {
        prod *= rec.beta() * 64 * (k + J) * (rec.s() + (k + J - 1)) * k;
    }
    return prod;
}

}  // namespace qes
