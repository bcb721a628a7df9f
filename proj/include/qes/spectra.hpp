#pragma once

/**
 * @file spectra.hpp
 * @brief QES energies, discrete weights, norms, moments and duality checks.
 *
 * The QES energies are the J roots of the critical polynomial P_J. The
 * weights w_k solve sum_k P_n(E_k) w_k = delta_{n0} for n = 0..J-1, which
 * defines a discrete J-point measure; norms and moments are taken against it.
 *
 * In exact mode the energies are generally irrational, so they are returned
 * as certified rational approximations. Quantities that are rational at the
 * true roots (norms, moments) are then evaluated with DiscreteMeasure, which
 * works in Q[E]/(P_J) and never touches the approximations.
 */

#include <optional>
#include <vector>

#include "qes/poly.hpp"
#include "qes/recursion.hpp"
#include "qes/roots.hpp"
#include "qes/scalar.hpp"

namespace qes {

struct QESSpectrum {
    int J = 0;
    ScalarMode mode;
    std::vector<Scalar> energies;  // ascending
    std::vector<IsolatedRoot> roots;  // certified intervals, aligned with energies
    std::vector<Scalar> weights;   // aligned with energies
    PolyE critical;                // P_J

    /// True when every energy is exactly a root of P_J.
    bool energies_exact() const;
};

/// Roots of P_J with their certified intervals. Throws RootCertificationError
/// (or DegenerateRootsError) if J simple real roots cannot be certified.
std::vector<IsolatedRoot> qes_roots(const SexticRecursion& rec, const RootOptions& options = {});
std::vector<Scalar> qes_energies(const SexticRecursion& rec, const RootOptions& options = {});

/// Energies and weights together.
QESSpectrum compute_spectrum(const SexticRecursion& rec, const RootOptions& options = {});

/// Analytic energies for J <= 2 (any alpha) and self-dual J <= 5. Exact mode
/// yields exact values for J = 1 and floats of `float_bits` precision above.
std::optional<std::vector<Scalar>> closed_form_energies(const SexticRecursion& rec,
                                                        unsigned float_bits = kDefaultFloatBits);

/// Solves sum_k P_n(E_k) w_k = delta_{n0}, n = 0..J-1.
/// Throws DegenerateRootsError if two energies coincide or the system is singular.
std::vector<Scalar> weights(const SexticRecursion& rec, const std::vector<Scalar>& energies);

/// The linear functional L(f) = sum_k w_k f(E_k) evaluated exactly on
/// Q[E]/(P_J): f is reduced mod P_J and expanded in P_0..P_{J-1}; L picks the
/// P_0 coefficient.
class DiscreteMeasure {
  public:
    explicit DiscreteMeasure(const SexticRecursion& rec);

    Scalar operator()(const PolyE& f) const;
    Scalar moment(int n) const;
    Scalar norm(int n) const;

  private:
    std::vector<PolyE> basis_;  // P_0 .. P_J
};

/// sum_k w_k P_n(E_k)^2 over the given nodes.
Scalar discrete_norm(const SexticRecursion& rec, const std::vector<Scalar>& energies,
                     const std::vector<Scalar>& weights, int n);
/// Discrete norm at the true roots: exact in exact mode even when the
/// energies are approximations.
Scalar discrete_norm(const SexticRecursion& rec, const QESSpectrum& spectrum, int n);

/// sum_k w_k E_k^n over the given nodes.
Scalar moment(const std::vector<Scalar>& energies, const std::vector<Scalar>& weights, int n);
/// Moment at the true roots (see discrete_norm).
Scalar moment(const SexticRecursion& rec, const QESSpectrum& spectrum, int n);

/// alpha -> -alpha (C -> -C).
SexticRecursion dualize(const SexticRecursion& rec);

struct DualityReport {
    std::vector<Scalar> energies;
    std::vector<Scalar> dual_energies;
    std::vector<Scalar> weights;
    std::vector<Scalar> dual_weights;
    Scalar max_energy_deviation;  // max_k |E^_k + E_{J+1-k}|
    Scalar max_weight_deviation;  // max_k |w^_k - w_{J+1-k}|
    bool passed = false;
};

DualityReport duality_check(const SexticRecursion& rec, const RootOptions& options = {});

struct SelfDualReport {
    std::vector<Scalar> energies;
    std::vector<Scalar> weights;
    Scalar max_energy_asymmetry;  // max_k |E_k + E_{J+1-k}|
    Scalar max_weight_asymmetry;  // max_k |w_k - w_{J+1-k}|
    std::vector<Scalar> odd_sums;  // sum_k E_k^{2m+1} w_k, m = 0..J-1
    Scalar max_odd_sum;
    bool zero_level_consistent = false;  // odd J: middle level is 0; even J: no zero level
    bool passed = false;
};

/// Requires alpha = 0 (throws std::invalid_argument otherwise).
SelfDualReport selfdual_check(const SexticRecursion& rec, const RootOptions& options = {});

struct PositivityReport {
    /// Monic form P_{k+1} = (E - b_k) P_k - a_k P_{k-1}.
    std::vector<Scalar> b;  // b_0 .. b_{J-1}
    std::vector<Scalar> a;  // a_1 .. a_J
    bool b_real = true;
    bool a_positive_below_J = false;  // a_k > 0 for 1 <= k < J
    std::optional<int> truncation_index;  // first k >= 1 with a_k = 0
    bool weights_positive_implied = false;
    bool norms_positive_implied = false;
};

PositivityReport positivity_report(const SexticRecursion& rec);

/// Tolerance used by the float-mode checks: 2^-(bits - 16) relative.
Scalar check_tolerance(const Scalar& scale);

}  // namespace qes
