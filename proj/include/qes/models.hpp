#pragma once

/**
 * @file models.hpp
 * @brief Reduction of the three N-body models to one radial problem.
 *
 * Each model reduces to
 *
 *   phi'' + (2 gamma + 1)/rho phi' + [E - B rho^2 - C rho^4 - H rho^6 - F/rho^2] phi = 0
 *
 * with a model-specific effective angular constant gamma. The sextic QES
 * recursion then depends only on (a, gamma, alpha, beta, J), collected in
 * ReducedModel.
 */

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qes/recursion.hpp"
#include "qes/scalar.hpp"

namespace qes {

class ModelError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Raised when J is not a positive integer.
class NotQESError : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

enum class ModelKind { calogero_marchioro, novel_correlation, calogero_sutherland, reduced };

std::string to_string(ModelKind kind);

struct ModelOptions {
    /// Float mode: relative tolerance for G = Lambda_D^2.
    double coupling_tolerance = 1e-15;
    /// Float mode: |J - round(J)| below this counts as an integer.
    double integer_tolerance = 1e-9;
};

/// Coefficients of V(rho) = (B rho^2 + C rho^4 + H rho^6 + F/rho^2)/2.
/// Exactly one of B and J is given; the other is derived.
struct SexticCoefficients {
    Scalar F;
    std::optional<Scalar> B;
    Scalar C;
    Scalar H;
    std::optional<long> J;
};

struct CalogeroMarchioroParams {
    int N = 2;
    int D = 2;
    Scalar g;
    std::optional<Scalar> G;  // derived from (D, g) when absent
    SexticCoefficients radial;
};

struct NovelCorrelationParams {
    int N = 2;
    Scalar g;  // correlation exponent; g1 = g(g-1), g2 = g^2
    SexticCoefficients radial;

    Scalar g1() const { return g * (g - 1); }
    Scalar g2() const { return g * g; }
};

struct CalogeroSutherlandParams {
    int N = 2;
    Scalar g;
    SexticCoefficients radial;
};

struct Provenance {
    ModelKind kind = ModelKind::reduced;
    /// Raw inputs and derived intermediates, in insertion order.
    std::vector<std::pair<std::string, Scalar>> values;
};

struct ReducedModel {
    Scalar a;
    Scalar gamma;
    Scalar alpha;
    Scalar beta;
    Scalar J;
    bool is_qes = false;
    // Radial potential coefficients consistent with the fields above.
    Scalar B;
    Scalar C;
    Scalar H;
    Scalar F;
    Provenance provenance;

    ScalarMode mode() const { return alpha.mode(); }
    /// s = 1 + a + gamma
    Scalar s() const { return a + gamma + 1; }
    /// Throws NotQESError unless J is a positive integer.
    SexticRecursion recursion() const;
};

struct JResult {
    Scalar J;
    bool is_qes = false;
    std::optional<long> integer;  // set when is_qes
};

/// Non-negative root of F = a^2 + 2 a gamma.
Scalar a_from_F(const Scalar& F, const Scalar& gamma);

/// J from B = 4 alpha^2 - 8 beta (2J + a + gamma).
JResult j_from_B(const Scalar& B, const Scalar& alpha, const Scalar& beta, const Scalar& a, const Scalar& gamma,
                 const ModelOptions& options = {});

/// B = 4 alpha^2 - 8 beta (2J + a + gamma).
Scalar b_from_J(const Scalar& J, const Scalar& alpha, const Scalar& beta, const Scalar& a, const Scalar& gamma);

/// Lambda_D = ((D-2)^2 + 4g)^{1/2}/2 - (D-2)/2.
Scalar lambda_D(int D, const Scalar& g);

/// Gamma_D = [D(N-1) - 2 + Lambda_D N(N-1)]/2.
Scalar gamma_calogero_marchioro(int N, int D, const Scalar& lambda);
/// Delta with 2 Delta + 1 = 2N - 1 + 2 g N(N-1).
Scalar delta_novel_correlation(int N, const Scalar& g);
/// Delta with 2 Delta + 1 = N - 1 + N(N-1) lambda, lambda = (1+4g)^{1/2}/2.
Scalar delta_calogero_sutherland(int N, const Scalar& g);

ReducedModel cm_reduce(const CalogeroMarchioroParams& p, const ModelOptions& options = {});
ReducedModel novel_reduce(const NovelCorrelationParams& p, const ModelOptions& options = {});
ReducedModel cs_reduce(const CalogeroSutherlandParams& p, const ModelOptions& options = {});

/// Reduced model given directly by (a, gamma, alpha, beta, J).
ReducedModel reduced_model(const Scalar& a, const Scalar& gamma, const Scalar& alpha, const Scalar& beta, long J);

using Position = std::vector<Scalar>;

/// rho^2 by the model's own definition:
/// CM: (1/N) sum_{i<j} |r_i - r_j|^2; novel: sum_i |r_i|^2 (2D); CS: sum_i x_i^2 (1D).
Scalar rho_squared_from_configuration(ModelKind kind, const std::vector<Position>& positions);
/// sqrt of the above; exact mode requires a perfect square.
Scalar rho_from_configuration(ModelKind kind, const std::vector<Position>& positions);

}  // namespace qes
