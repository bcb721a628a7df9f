#pragma once

/**
 * @file radial.hpp
 * @brief Numerical checks of claimed eigenpairs of the radial equation
 *
 *   phi'' + (2 gamma + 1)/rho phi' - W(rho) phi + E phi = 0,
 *
 * W = B rho^2 + C rho^4 + H rho^6 + F/rho^2 (sextic) or
 * W = B^2 rho^2 - C/rho + F/rho^2 (oscillator + Coulomb).
 *
 * Everything here runs in long double.
 */

#include <functional>
#include <variant>
#include <vector>

#include "qes/coulomb.hpp"
#include "qes/recursion.hpp"
#include "qes/scalar.hpp"

namespace qes {

struct SexticPotential {
    long double B = 0, C = 0, H = 0, F = 0;
};

struct CoulombPotential {
    long double B = 0, C = 0, F = 0;
};

struct RadialProblem {
    long double gamma = 0;
    std::variant<SexticPotential, CoulombPotential> potential;

    /// W(rho), twice the potential.
    long double W(long double rho) const;
    long double F() const;
    /// Non-negative root of F = a^2 + 2 a gamma.
    long double a() const;
};

/// Potential of the sextic sector with parameters (alpha, beta, J) and a + gamma = s - 1.
RadialProblem sextic_problem(const SexticRecursion& rec, const Scalar& a, const Scalar& gamma);
RadialProblem coulomb_problem(const CoulombModel& m);

/// phi(rho) = rho^a exp(-q rho^2 - r rho^4) sum_n c_n rho^(stride n).
struct SeriesEigenfunction {
    long double a = 0;
    long double q = 0;
    long double r = 0;
    int stride = 2;
    std::vector<long double> c;

    long double operator()(long double rho) const;
    /// Positive zeros of the polynomial factor.
    int nodes() const;
};

/// c_n = P_n(E) / (4^n n! Gamma(n + a + gamma + 1)), n < J.
/// Throws std::domain_error when E is not a root of P_J to 1e-12 relative.
SeriesEigenfunction build_sextic_eigenfunction(const SexticRecursion& rec, const Scalar& a, const Scalar& gamma,
                                               const Scalar& E);
/// phi = rho^a exp(-B rho^2/2) eta for a level from coulomb_level().
SeriesEigenfunction build_coulomb_eigenfunction(const CoulombLevel& level);

/// Uniform grid rho_i = rho0 + i h, i = 0..intervals.
struct Grid {
    long double rho0 = 0;
    long double h = 0;
    int intervals = 0;

    long double at(int i) const { return rho0 + h * i; }
};

/// Signed pointwise residual at the interior nodes 1..intervals-1, central
/// differences applied to phi / rho^a with the rho^a factor handled analytically.
std::vector<long double> pointwise_residual(const RadialProblem& p, const Grid& grid,
                                            const std::vector<long double>& phi, long double E);

/// max |residual| over the interior, divided by max |phi|.
long double residual(const RadialProblem& p, const Grid& grid, const std::vector<long double>& phi, long double E);

/// Smallest rho beyond the peak of |phi| where |phi| < tol * peak.
long double decay_extent(const std::function<long double(long double)>& phi, long double tol = 1e-12L);

struct ResidualReport {
    int points = 0;
    long double rho0 = 0;
    long double rho_max = 0;
    /// Raw residuals with points/2, points and 2 points intervals.
    long double raw_coarse = 0;
    long double raw = 0;
    long double raw_fine = 0;
    /// log2(raw / raw_fine).
    long double slope = 0;
    /// Richardson value (4 r_fine - r) / 3 at the shared nodes, max-normalized.
    long double extrapolated = 0;
};

/// Residual study on (rho0, rho_max] with rho0 = rho_max / 1000 held fixed under refinement.
ResidualReport residual_study(const RadialProblem& p, const std::function<long double(long double)>& phi,
                              long double E, int points = 10000);

struct ShootOptions {
    int steps = 20000;
    long double relative_tolerance = 1e-12L;
    /// Decay exponent integrated past the outer turning point.
    long double decay_exponent = 28.0L;
};

class ShootingError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Nodes of the solution regular at the origin, integrated to the outer edge.
int shooting_nodes(const RadialProblem& p, long double E, long double rho_max, const ShootOptions& options = {});

/// Outer edge used by shoot() for energies up to E_hi.
long double shooting_extent(const RadialProblem& p, long double E_hi, const ShootOptions& options = {});

/// Bisection on the node count. Throws ShootingError unless the bracket holds
/// exactly one eigenvalue.
long double shoot(const RadialProblem& p, long double E_lo, long double E_hi, const ShootOptions& options = {});

struct LevelValidation {
    ResidualReport residual;
    long double shot_energy = 0;
    long double relative_error = 0;
    long double bracket_lo = 0;
    long double bracket_hi = 0;
};

/// Residual study plus shooting around E; the bracket half-width starts at
/// `half_width` and halves while it holds more than one eigenvalue.
LevelValidation validate_level(const RadialProblem& p, const SeriesEigenfunction& phi, long double E,
                               long double half_width, int points = 10000, const ShootOptions& options = {});

}  // namespace qes
