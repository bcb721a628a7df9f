#include "qes/roots.hpp"

#include <algorithm>
#include <complex>
#include <string>

#include <Eigen/Dense>

namespace qes {

namespace {

using QVec = std::vector<mpq_class>;

QVec to_rationals(const PolyE& p) {
    QVec out;
    out.reserve(p.coeffs().size());
    for (const auto& c : p.coeffs()) out.push_back(c.as_rational());
    return out;
}

mpq_class horner(const QVec& c, const mpq_class& x) {
    mpq_class acc = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
        acc *= x;
        acc += *it;
    }
    return acc;
}

int variations(const std::vector<QVec>& seq, const mpq_class& x) {
    int count = 0;
    int last = 0;
    for (const auto& s : seq) {
        int sg = sgn(horner(s, x));
        if (sg == 0) continue;
        if (last != 0 && sg != last) ++count;
        last = sg;
    }
    return count;
}

std::vector<QVec> sturm_rationals(const PolyE& p) {
    std::vector<QVec> out;
    for (const auto& s : sturm_sequence(p)) out.push_back(to_rationals(s));
    return out;
}

mpq_class power_of_two_above(const mpq_class& x) {
    mpq_class m = 1;
    while (m <= x) m *= 2;
    return m;
}

/// Exact-mode isolation on a square-free polynomial.
class ExactIsolator {
  public:
    ExactIsolator(const PolyE& sqfree, const RootOptions& options)
        : poly_(to_rationals(sqfree)), seq_(sturm_rationals(sqfree)) {
        bound_ = root_bound(sqfree).as_rational();
        mpq_class width = bound_;
        mpq_div_2exp(width.get_mpq_t(), width.get_mpq_t(), options.width_bits);

        // Rational roots p/q have q | leading coefficient of the integer form.
        mpz_class lcm_den = 1;
        for (const auto& c : poly_) mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), c.get_den_mpz_t());
        mpz_class lead = abs(mpz_class(poly_.back() * lcm_den));
        mpz_class lead_sq = 2 * lead * lead;
        detect_rationals_ = mpz_sizeinbase(lead_sq.get_mpz_t(), 2) <= options.rational_bits;
        if (detect_rationals_) width = std::min(width, mpq_class(1, lead_sq));
        target_width_ = width;
    }

    const mpq_class& bound() const { return bound_; }

    int total() const { return variations(seq_, -bound_) - variations(seq_, bound_); }

    std::vector<IsolatedRoot> run() {
        mpq_class lo = -bound_, hi = bound_;
        isolate(lo, hi, variations(seq_, lo), variations(seq_, hi));
        std::sort(found_.begin(), found_.end(),
                  [](const IsolatedRoot& a, const IsolatedRoot& b) { return a.value < b.value; });
        return std::move(found_);
    }

  private:
    void push_exact(const mpq_class& x) {
        Scalar v = Scalar::exact(x);
        found_.push_back({v, v, v, true});
    }

    // Neither endpoint is a root; v_lo - v_hi roots lie in (lo, hi).
    void isolate(const mpq_class& lo, const mpq_class& hi, int v_lo, int v_hi) {
        const int count = v_lo - v_hi;
        if (count <= 0) return;
        if (count == 1) {
            refine(lo, hi);
            return;
        }
        mpq_class mid = (lo + hi) / 2;
        int v_mid = variations(seq_, mid);
        if (sgn(horner(poly_, mid)) == 0) {
            push_exact(mid);
            isolate(lo, mid, v_lo, v_mid + 1);
            isolate(mid, hi, v_mid, v_hi);
            return;
        }
        isolate(lo, mid, v_lo, v_mid);
        isolate(mid, hi, v_mid, v_hi);
    }

    void refine(mpq_class lo, mpq_class hi) {
        // Sign just right of lo; lo itself may be an exact root found earlier.
        int s_lo = sgn(horner(poly_, lo));
        if (s_lo == 0) s_lo = sgn(horner(seq_[1], lo));
        while (hi - lo > target_width_) {
            mpq_class mid = (lo + hi) / 2;
            int s_mid = sgn(horner(poly_, mid));
            if (s_mid == 0) {
                push_exact(mid);
                return;
            }
            if (s_mid == s_lo) {
                lo = std::move(mid);
            } else {
                hi = std::move(mid);
            }
        }
        if (detect_rationals_) {
            mpq_class candidate = simplest_rational(lo, hi);
            if (sgn(horner(poly_, candidate)) == 0) {
                push_exact(candidate);
                return;
            }
        }
        mpq_class mid = (lo + hi) / 2;
        found_.push_back({Scalar::exact(mid), Scalar::exact(lo), Scalar::exact(hi), false});
    }

    QVec poly_;
    std::vector<QVec> seq_;
    mpq_class bound_;
    mpq_class target_width_;
    bool detect_rationals_ = false;
    std::vector<IsolatedRoot> found_;
};

PolyE squarefree_part(const PolyE& p, bool& had_repeated) {
    std::vector<PolyE> seq = sturm_sequence(p);
    const PolyE& g = seq.back();
    had_repeated = g.degree().value_or(0) > 0;
    if (!had_repeated) return p;
    return poly_divide(p, g).quotient;
}

std::vector<std::complex<double>> companion_eigenvalues(const PolyE& p) {
    const std::size_t n = *p.degree();
    std::vector<double> c(n + 1);
    for (std::size_t i = 0; i <= n; ++i) c[i] = static_cast<double>(p[i].to_long_double());
    Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t i = 1; i < n; ++i) comp(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i - 1)) = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
        comp(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(n - 1)) = -c[i] / c[n];
    }
    Eigen::EigenSolver<Eigen::MatrixXd> solver(comp, false);
    if (solver.info() != Eigen::Success) throw RootCertificationError("companion eigenvalue solve failed");
    std::vector<std::complex<double>> out;
    for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) out.push_back(solver.eigenvalues()[i]);
    return out;
}

Scalar newton_polish(const PolyE& p, const PolyE& dp, Scalar x, const Scalar& scale, int max_steps) {
    const unsigned bits = p.mode().bits;
    const Scalar tiny = ldexp(scale, -static_cast<long>(bits));
    for (int step = 0; step < max_steps; ++step) {
        Scalar fx = eval_poly(p, x);
        if (fx.is_zero()) break;
        Scalar dfx = eval_poly(dp, x);
        if (dfx.is_zero()) break;
        Scalar dx = fx / dfx;
        x -= dx;
        if (abs(dx) <= ldexp(abs(x), 3 - static_cast<long>(bits)) + tiny) break;
    }
    return x;
}

Scalar linear_root(const PolyE& p) { return -p[0] / p[1]; }

std::vector<IsolatedRoot> float_all_real(const PolyE& p, const RootOptions& options) {
    const std::size_t n = *p.degree();
    const ScalarMode mode = p.mode();
    const Scalar bound = root_bound(p);
    std::vector<Scalar> roots;
    if (n == 1) {
        roots.push_back(linear_root(p));
    } else {
        const PolyE dp = derivative(p);
        for (const auto& z : companion_eigenvalues(p)) {
            Scalar guess = Scalar::floating(static_cast<long double>(z.real()), mode.bits);
            roots.push_back(newton_polish(p, dp, guess, bound, options.max_newton_steps));
        }
        std::sort(roots.begin(), roots.end());
    }
    // Sign-alternation certificate: p changes sign across each root.
    std::vector<Scalar> fence;
    fence.push_back(-bound);
    for (std::size_t i = 0; i + 1 < roots.size(); ++i) {
        if (!(roots[i] < roots[i + 1])) {
            throw RootCertificationError("could not separate roots " + std::to_string(i + 1) + " and " +
                                         std::to_string(i + 2) + " (repeated or complex pair)");
        }
        fence.push_back((roots[i] + roots[i + 1]) / 2);
    }
    fence.push_back(bound);
    int last = 0;
    for (std::size_t i = 0; i < fence.size(); ++i) {
        int sg = eval_poly(p, fence[i]).sign();
        if (sg == 0 || (i > 0 && sg == last)) {
            throw RootCertificationError("sign-alternation certificate failed: fewer than " + std::to_string(n) +
                                         " simple real roots");
        }
        last = sg;
    }
    std::vector<IsolatedRoot> out;
    for (std::size_t i = 0; i < roots.size(); ++i) {
        bool hit = eval_poly(p, roots[i]).is_zero();
        out.push_back({roots[i], fence[i], fence[i + 1], hit});
    }
    return out;
}

std::vector<IsolatedRoot> float_distinct_real(const PolyE& p, const RootOptions& options) {
    const std::size_t n = *p.degree();
    const ScalarMode mode = p.mode();
    const Scalar bound = root_bound(p);
    std::vector<Scalar> candidates;
    if (n == 1) {
        candidates.push_back(linear_root(p));
    } else {
        const PolyE dp = derivative(p);
        for (const auto& z : companion_eigenvalues(p)) {
            if (std::abs(z.imag()) > 1e-7 * (1.0 + std::abs(z.real()))) continue;
            Scalar guess = Scalar::floating(static_cast<long double>(z.real()), mode.bits);
            candidates.push_back(newton_polish(p, dp, guess, bound, options.max_newton_steps));
        }
        std::sort(candidates.begin(), candidates.end());
    }
    std::vector<IsolatedRoot> out;
    for (const auto& r : candidates) {
        if (!out.empty() && out.back().value == r) continue;
        const Scalar delta = ldexp(abs(r) + 1, -static_cast<long>(mode.bits / 2));
        Scalar lo = r - delta, hi = r + delta;
        int s_lo = eval_poly(p, lo).sign(), s_hi = eval_poly(p, hi).sign();
        bool hit = eval_poly(p, r).is_zero();
        if (!hit && s_lo * s_hi >= 0) continue;  // not certified as a real simple root
        out.push_back({r, lo, hi, hit});
    }
    return out;
}

void require_nonconstant(const PolyE& p) {
    if (p.is_zero()) throw std::invalid_argument("roots of the zero polynomial");
}

}  // namespace

std::vector<PolyE> sturm_sequence(const PolyE& p) {
    if (!p.mode().is_exact()) throw ModeMismatch("Sturm sequences require exact mode");
    std::vector<PolyE> seq{p};
    PolyE d = derivative(p);
    if (d.is_zero()) return seq;
    seq.push_back(std::move(d));
    for (;;) {
        PolyE r = poly_divide(seq[seq.size() - 2], seq.back()).remainder;
        if (r.is_zero()) break;
        seq.push_back(-r);
    }
    return seq;
}

int sign_variations(const std::vector<PolyE>& seq, const Scalar& x) {
    int count = 0;
    int last = 0;
    for (const auto& s : seq) {
        int sg = eval_poly(s, x).sign();
        if (sg == 0) continue;
        if (last != 0 && sg != last) ++count;
        last = sg;
    }
    return count;
}

Scalar root_bound(const PolyE& p) {
    require_nonconstant(p);
    const Scalar lead = abs(p.leading());
    Scalar m = p.leading().like(0);
    for (std::size_t i = 0; i + 1 < p.coeffs().size(); ++i) m = std::max(m, abs(p.coeffs()[i]) / lead);
    m = m + 1;
    if (p.mode().is_exact()) return Scalar::exact(power_of_two_above(m.as_rational()));
    Scalar pow2 = m.like(1);
    while (pow2 <= m) pow2 = pow2 * 2;
    return pow2;
}

int count_real_roots(const PolyE& p, const Scalar& lo, const Scalar& hi) {
    auto seq = sturm_sequence(p);
    return sign_variations(seq, lo) - sign_variations(seq, hi);
}

std::vector<IsolatedRoot> real_roots(const PolyE& p, const RootOptions& options) {
    require_nonconstant(p);
    const std::size_t n = *p.degree();
    if (n == 0) return {};
    if (!p.mode().is_exact()) return float_all_real(p, options);

    bool repeated = false;
    squarefree_part(p, repeated);
    if (repeated) throw DegenerateRootsError("polynomial has a repeated root");
    ExactIsolator iso(p, options);
    const int total = iso.total();
    if (total != static_cast<int>(n)) {
        throw RootCertificationError("Sturm count certifies only " + std::to_string(total) + " real roots of a degree-" +
                                     std::to_string(n) + " polynomial");
    }
    return iso.run();
}

std::vector<IsolatedRoot> distinct_real_roots(const PolyE& p, const RootOptions& options) {
    require_nonconstant(p);
    if (*p.degree() == 0) return {};
    if (!p.mode().is_exact()) return float_distinct_real(p, options);
    bool repeated = false;
    PolyE sqf = squarefree_part(p, repeated);
    return ExactIsolator(sqf, options).run();
}

mpq_class simplest_rational(const mpq_class& lo, const mpq_class& hi) {
    if (lo > hi) throw std::invalid_argument("simplest_rational: empty interval");
    if (sgn(lo) <= 0 && sgn(hi) >= 0) return 0;
    if (sgn(hi) < 0) return -simplest_rational(-hi, -lo);
    mpz_class fl;
    mpz_fdiv_q(fl.get_mpz_t(), lo.get_num_mpz_t(), lo.get_den_mpz_t());
    if (lo == mpq_class(fl)) return lo;
    if (mpq_class(fl + 1) <= hi) return mpq_class(fl + 1);
    mpq_class inner = simplest_rational(1 / (hi - fl), 1 / (lo - fl));
    mpq_class out = fl + 1 / inner;
    out.canonicalize();
    return out;
}

}  // namespace qes
