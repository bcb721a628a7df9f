#pragma once

#include <cstddef>
#include <optional>
#include <ostream>
#include <utility>
#include <vector>

#include "qes/scalar.hpp"

namespace qes {

/**
 * Dense univariate polynomial in the energy variable E.
 *
 * coeffs()[i] is the coefficient of E^i. Trailing exact zeros are stripped,
 * so the zero polynomial has no coefficients and no degree. Every
 * polynomial carries a ScalarMode, including the zero polynomial.
 */
class PolyE {
  public:
    explicit PolyE(ScalarMode mode = ScalarMode::exact());
    /// Coefficients in ascending order; all must share one mode.
    explicit PolyE(std::vector<Scalar> coeffs);
    PolyE(std::vector<Scalar> coeffs, ScalarMode mode);

    static PolyE constant(const Scalar& c);
    /// c * E^n
    static PolyE monomial(const Scalar& c, std::size_t n);
    /// The polynomial E in the given mode.
    static PolyE identity(ScalarMode mode);

    ScalarMode mode() const { return mode_; }
    const std::vector<Scalar>& coeffs() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }
    std::optional<std::size_t> degree() const;
    /// Coefficient of E^i (zero beyond the degree).
    Scalar operator[](std::size_t i) const;
    Scalar leading() const;

    PolyE operator-() const;
    PolyE& operator+=(const PolyE& rhs);
    PolyE& operator-=(const PolyE& rhs);
    PolyE& operator*=(const PolyE& rhs);
    PolyE& operator*=(const Scalar& c);

    friend PolyE operator+(PolyE a, const PolyE& b) { return a += b; }
    friend PolyE operator-(PolyE a, const PolyE& b) { return a -= b; }
    friend PolyE operator*(PolyE a, const PolyE& b) { return a *= b; }
    friend PolyE operator*(PolyE a, const Scalar& c) { return a *= c; }
    friend PolyE operator*(const Scalar& c, PolyE a) { return a *= c; }

    /// Coefficient-wise equality; throws ModeMismatch across modes.
    friend bool operator==(const PolyE& a, const PolyE& b);

  private:
    void normalize();

    std::vector<Scalar> coeffs_;
    ScalarMode mode_;
};

struct DivisionResult {
    PolyE quotient;
    PolyE remainder;
};

/// Horner evaluation. Exact in exact mode.
Scalar eval_poly(const PolyE& p, const Scalar& e);

/// Euclidean division: numerator = divisor * quotient + remainder with
/// deg(remainder) < deg(divisor). Throws std::domain_error on a zero divisor.
DivisionResult poly_divide(const PolyE& numerator, const PolyE& divisor);

PolyE derivative(const PolyE& p);

/// p(-E)
PolyE reflect(const PolyE& p);

/// Copy scaled to leading coefficient 1.
PolyE monic(const PolyE& p);

std::ostream& operator<<(std::ostream& os, const PolyE& p);

}  // namespace qes
