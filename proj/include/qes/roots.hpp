#pragma once

/**
 * @file roots.hpp
 * @brief Certified real-root isolation for PolyE.
 *
 * Exact mode: Sturm-sequence counting on dyadic intervals, then bisection
 * until the interval is narrower than the requested width. Every rational
 * root is returned exactly: intervals are refined until they can contain at
 * most one rational with a denominator dividing the leading coefficient, and
 * the simplest rational in the interval is tested.
 *
 * Float mode: companion-matrix eigenvalues in double precision, Newton
 * polishing at the polynomial's precision, then a sign-alternation
 * certificate on the polished roots.
 */

#include <stdexcept>
#include <vector>

#include "qes/poly.hpp"

namespace qes {

/// Raised when the root finder cannot certify the expected set of real roots.
class RootCertificationError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Raised when a polynomial has a repeated root.
class DegenerateRootsError : public RootCertificationError {
  public:
    using RootCertificationError::RootCertificationError;
};

struct IsolatedRoot {
    Scalar value;
    Scalar lower;  // value lies in [lower, upper]
    Scalar upper;
    bool exact = false;  // value is exactly a root
};

struct RootOptions {
    /// Exact mode: final interval width is at most bound * 2^-width_bits.
    unsigned width_bits = 160;
    /// Exact mode: skip exact rational-root detection when it would need
    /// intervals narrower than 2^-rational_bits.
    unsigned rational_bits = 4096;
    int max_newton_steps = 100;
};

/// Sturm sequence p, p', -rem(p, p'), ... (exact mode only).
std::vector<PolyE> sturm_sequence(const PolyE& p);
/// Sign variations of the sequence at x, zeros skipped.
int sign_variations(const std::vector<PolyE>& seq, const Scalar& x);

/// Power of two strictly larger than the modulus of every root.
Scalar root_bound(const PolyE& p);

/// Distinct real roots in (lo, hi], counted with a Sturm sequence.
int count_real_roots(const PolyE& p, const Scalar& lo, const Scalar& hi);

/// All roots of p, which must be real and simple; sorted ascending.
/// Throws DegenerateRootsError on repeated roots and RootCertificationError
/// if fewer than deg(p) real roots are certified.
std::vector<IsolatedRoot> real_roots(const PolyE& p, const RootOptions& options = {});

/// The distinct real roots of p (p may have complex roots), sorted ascending.
std::vector<IsolatedRoot> distinct_real_roots(const PolyE& p, const RootOptions& options = {});

/// Rational with the smallest denominator in [lo, hi] (lo <= hi).
mpq_class simplest_rational(const mpq_class& lo, const mpq_class& hi);

}  // namespace qes
