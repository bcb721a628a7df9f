#pragma once

/**
 * @file recursion.hpp
 * @brief Energy polynomials of the sextic QES sector.
 *
 * With s = 1 + a + Gamma the critical family obeys
 *
 *   P_n = -(E - 4 alpha (2n - 2 + s)) P_{n-1}
 *         + 64 beta (n-1)(n-2+s)(n-J-1) P_{n-2},      P_{-1} = 0, P_0 = 1,
 *
 * and the quotient family Q_n (P_{n+J} = P_J Q_n) obeys the same shape with
 * n shifted by J in the diagonal and the coupling 64 beta (n+J-1)(n+J-2+s)(n-1).
 * Leading coefficients are (-1)^n; no monic rescaling is applied.
 */

#include <optional>
#include <vector>

#include "qes/poly.hpp"
#include "qes/scalar.hpp"

namespace qes {

/// Parameters (alpha, beta, s, J) of the sextic recursion.
class SexticRecursion {
  public:
    /// Throws std::invalid_argument unless beta > 0, s > 0 and J >= 1, and
    /// ModeMismatch unless alpha, beta, s share one mode.
    SexticRecursion(Scalar alpha, Scalar beta, Scalar s, int J);

    const Scalar& alpha() const { return alpha_; }
    const Scalar& beta() const { return beta_; }
    const Scalar& s() const { return s_; }
    int J() const { return J_; }
    ScalarMode mode() const { return alpha_.mode(); }

    /// a + Gamma
    Scalar a_plus_gamma() const { return s_ - 1; }

    SexticRecursion to_mode(ScalarMode mode) const;
    SexticRecursion with_alpha(Scalar alpha) const;

    friend bool operator==(const SexticRecursion&, const SexticRecursion&) = default;

  private:
    Scalar alpha_;
    Scalar beta_;
    Scalar s_;
    int J_;
};

/// One step of P_n = (A_n E + B_n) P_{n-1} + C_n P_{n-2}.
struct ThreeTermCoefficients {
    Scalar A;
    Scalar B;
    Scalar C;
};

/// Coefficients of the critical family at index n >= 1.
ThreeTermCoefficients p_coefficients(const SexticRecursion& rec, int n);
/// Coefficients of the quotient family at index n >= 1.
ThreeTermCoefficients q_coefficients(const SexticRecursion& rec, int n);

/// P_0 .. P_{n_max}. Throws std::invalid_argument for n_max < 0.
std::vector<PolyE> generate_P(const SexticRecursion& rec, int n_max);
/// Q_0 .. Q_{n_max}. Throws std::invalid_argument for n_max < 0.
std::vector<PolyE> generate_Q(const SexticRecursion& rec, int n_max);

/// P_J, whose roots are the QES energies.
PolyE critical_polynomial(const SexticRecursion& rec);

struct ThreeTermRow {
    int n;
    ThreeTermCoefficients coeffs;
    bool a_nonzero;
    bool c_nonzero;
};

struct ThreeTermReport {
    std::vector<ThreeTermRow> rows;  // n = 1 .. n_max
    bool a_all_nonzero = true;
    bool c1_zero = true;
    /// Largest m with C_n != 0 for every 2 <= n <= m (1 if C_2 == 0).
    int orthogonal_through = 1;
    /// First n >= 2 with C_n == 0, if any within n_max.
    std::optional<int> first_collapse;
};

/// Checks the orthogonality-theorem hypotheses (A_n != 0, C_1 = 0, C_n != 0)
/// on the concrete recursion coefficients for 1 <= n <= n_max.
ThreeTermReport verify_three_term_form(const SexticRecursion& rec, int n_max);

/// gamma_n^P = prod_{k=1..n} 64 beta k (k + a + Gamma)(J - k).
Scalar norm_P(const SexticRecursion& rec, int n);
/// gamma_n^Q = prod_{k=1..n} 64 beta (k + J)(k + J + a + Gamma) k.
Scalar norm_Q(const SexticRecursion& rec, int n);

}  // namespace qes
