#pragma once

/**
 * @file coulomb.hpp
 * @brief Oscillator + Coulomb + inverse-square radial family.
 *
 * W(rho) = B^2 rho^2 - C/rho + F/rho^2 with F = a^2 + 2 a gamma, and
 * phi = rho^a exp(-B rho^2/2) sum_n P_n(E) rho^n. The coefficients obey
 *
 *   n (2a + 2gamma + n) P_n + C P_{n-1} + [E - 2B(n - 1 + a + gamma)] P_{n-2} = 0.
 *
 * P_n is odd in C for odd n and even for even n, so every P_n is stored as
 * C^(n mod 2) R_n with R_n depending on C only through C^2. This keeps exact
 * mode exact when C^2 is rational but C is not.
 */

#include <optional>
#include <string>
#include <vector>

#include "qes/poly.hpp"
#include "qes/roots.hpp"
#include "qes/scalar.hpp"

namespace qes {

class CoulombModel {
  public:
    /// Throws std::invalid_argument unless a >= 0, B > 0 and 2a + 2gamma + 1 > 0.
    static CoulombModel from_C(Scalar a, Scalar gamma, Scalar B, const Scalar& C);
    /// C = sign * sqrt(C2); sign in {-1, 0, +1} and must be 0 exactly when C2 = 0.
    static CoulombModel from_C_squared(Scalar a, Scalar gamma, Scalar B, Scalar C2, int sign);

    const Scalar& a() const { return a_; }
    const Scalar& gamma() const { return gamma_; }
    const Scalar& B() const { return B_; }
    const Scalar& C_squared() const { return C2_; }
    int C_sign() const { return sign_; }
    /// Throws InexactError in exact mode when C^2 is not a rational square.
    Scalar C() const;
    Scalar F() const { return a_ * a_ + a_ * gamma_ * 2; }
    ScalarMode mode() const { return a_.mode(); }
    CoulombModel to_mode(ScalarMode mode) const;

  private:
    CoulombModel(Scalar a, Scalar gamma, Scalar B, Scalar C2, int sign);

    Scalar a_;
    Scalar gamma_;
    Scalar B_;
    Scalar C2_;
    int sign_ = 0;
};

struct CoulombSeries {
    CoulombModel model;
    /// R_0 .. R_{n_max}, polynomials in E; P_n = C^(n mod 2) R_n.
    std::vector<PolyE> reduced;

    std::size_t size() const { return reduced.size(); }
    /// P_n materialized; needs C() for odd n.
    PolyE P(std::size_t n) const;
    /// P_n(E) without forming C when P_n is even in C.
    Scalar eval(std::size_t n, const Scalar& E) const;
};

CoulombSeries coulomb_polynomials(const CoulombModel& m, int n_max);

/// E = 2B(n + 1 + a + gamma).
Scalar coulomb_energy(const Scalar& a, const Scalar& gamma, int n, const Scalar& B);

/// Polynomial in x = C^2 whose roots are the couplings truncating the series
/// at degree n (P_{n+1} = 0 at the energy above). Degree ceil(n/2).
PolyE termination_constraint(const Scalar& a, const Scalar& gamma, int n, const Scalar& B);

struct TerminationSolution {
    int n = 0;
    Scalar E;
    /// Positive roots of the constraint, ascending; roots[i].exact marks exact values.
    std::vector<Scalar> C_squared;
    std::vector<IsolatedRoot> roots;
    PolyE constraint;
};

/// Throws std::invalid_argument for n < 1 or B <= 0, and std::domain_error
/// when the constraint has no positive root.
TerminationSolution termination_solve(const Scalar& a, const Scalar& gamma, int n, const Scalar& B,
                                      const RootOptions& options = {});

struct CoulombLevel {
    CoulombModel model;
    int n = 0;
    Scalar E;
    /// eta coefficients P_0(E) .. P_n(E) in powers of rho (needs C()).
    std::vector<Scalar> eta;
    int nodes = 0;  // positive zeros of eta
    std::string label;  // "excited" for C > 0, "ground" for C < 0
};

/// The truncated level of a model lying on the degree-n constraint surface.
/// Throws std::domain_error if P_{n+1}(E) does not vanish (float: to 2^-(bits-16)).
CoulombLevel coulomb_level(const CoulombModel& m, int n);

struct ObstructionRow {
    int n = 0;
    std::optional<std::size_t> degree;  // degree of P_n in E
    bool degree_ok = false;             // degree == n
    bool e_on_previous = false;         // E multiplies P_{n-1}
    std::string coupling_to_previous;   // what multiplies P_{n-1}
};

struct ObstructionReport {
    std::vector<ObstructionRow> rows;  // n = 1 .. n_max
    std::optional<int> first_violation_n;
    std::string first_violation;
    /// C = 0: odd P_n vanish and P_{2m} = (A_m E + B_m) P_{2m-2} with C_m = 0.
    bool collapses_to_three_term = false;
    struct EvenStep {
        int m;
        Scalar A;
        Scalar B;
        Scalar C;
    };
    std::vector<EvenStep> even_steps;
    std::string note;
};

ObstructionReport orthogonality_obstruction(const CoulombModel& m, int n_max);

}  // namespace qes
