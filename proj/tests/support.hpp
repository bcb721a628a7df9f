#pragma once

// Shared test helpers and independent oracles. Nothing here calls the
// recursion, root, spectra or coulomb code under test.

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "qes/scalar.hpp"

namespace qes::test {

inline constexpr unsigned kSeed = 20240917u;

inline Scalar Q(long p, long q = 1) { return Scalar::exact(p, q); }
inline Scalar F128(long double v) { return Scalar::floating(v, 128); }

/// Random rationals with small numerators and denominators.
class RationalSource {
  public:
    explicit RationalSource(unsigned seed = kSeed) : rng_(seed) {}

    Scalar any(long max_num = 20, long max_den = 9) {
        std::uniform_int_distribution<long> num(-max_num, max_num), den(1, max_den);
        return Scalar::exact(num(rng_), den(rng_));
    }
    Scalar positive(long max_num = 20, long max_den = 9) {
        std::uniform_int_distribution<long> num(1, max_num), den(1, max_den);
        return Scalar::exact(num(rng_), den(rng_));
    }
    Scalar non_negative(long max_num = 20, long max_den = 9) {
        std::uniform_int_distribution<long> num(0, max_num), den(1, max_den);
        return Scalar::exact(num(rng_), den(rng_));
    }
    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

  private:
    std::mt19937 rng_;
};

/// Monic recursion p_{k+1} = (E - b_k) p_k - a_k p_{k-1}, read off the
/// recursion P_n + [E - 4 alpha (2n - 1 + a + Gamma)] P_{n-1}
///   - 64 beta (n-1)(n-1+a+Gamma)(n-J-1) P_{n-2} = 0 with p_n = (-1)^n P_n.
struct MonicCoefficients {
    std::vector<Scalar> b;  // b_0 .. b_{J-1}
    std::vector<Scalar> a;  // a_1 .. a_{J-1}
};

inline MonicCoefficients monic_oracle(const Scalar& alpha, const Scalar& beta, const Scalar& s, int J) {
    const Scalar apg = s - 1;  // a + Gamma
    MonicCoefficients m;
    for (long n = 1; n <= J; ++n) m.b.push_back(alpha * 4 * (apg + (2 * n - 1)));
    for (long n = 2; n <= J; ++n) {
        // p_n = (E - b_{n-1}) p_{n-1} + 64 beta (n-1)(n-1+apg)(n-J-1) p_{n-2}
        m.a.push_back(-(beta * 64 * (n - 1) * (apg + (n - 1)) * (n - J - 1)));
    }
    return m;
}

/// mu_n = (M^n)_{00} for the multiplication-by-E matrix on p_0..p_{J-1}.
inline std::vector<Scalar> jacobi_moments(const MonicCoefficients& m, int n_max) {
    const std::size_t J = m.b.size();
    const ScalarMode mode = m.b.front().mode();
    std::vector<std::vector<Scalar>> M(J, std::vector<Scalar>(J, Scalar::integer(0, mode)));
    for (std::size_t k = 0; k < J; ++k) {
        M[k][k] = m.b[k];
        if (k + 1 < J) {
            M[k + 1][k] = Scalar::integer(1, mode);
            M[k][k + 1] = m.a[k];
        }
    }
    std::vector<Scalar> v(J, Scalar::integer(0, mode));
    v[0] = Scalar::integer(1, mode);
    std::vector<Scalar> out;
    for (int n = 0; n <= n_max; ++n) {
        out.push_back(v[0]);
        std::vector<Scalar> next(J, Scalar::integer(0, mode));
        for (std::size_t i = 0; i < J; ++i) {
            for (std::size_t j = 0; j < J; ++j) next[i] += M[i][j] * v[j];
        }
        v = std::move(next);
    }
    return out;
}

struct GaussRule {
    std::vector<long double> nodes;
    std::vector<long double> weights;
};

/// Golub-Welsch in long double: eigen-decomposition of the symmetrized Jacobi matrix.
inline GaussRule golub_welsch(const MonicCoefficients& m) {
    const Eigen::Index J = static_cast<Eigen::Index>(m.b.size());
    using Mat = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;
    Mat T = Mat::Zero(J, J);
    for (Eigen::Index k = 0; k < J; ++k) {
        T(k, k) = m.b[static_cast<std::size_t>(k)].to_long_double();
        if (k + 1 < J) {
            const long double off = std::sqrt(m.a[static_cast<std::size_t>(k)].to_long_double());
            T(k, k + 1) = off;
            T(k + 1, k) = off;
        }
    }
    Eigen::SelfAdjointEigenSolver<Mat> solver(T);
    GaussRule rule;
    for (Eigen::Index k = 0; k < J; ++k) {
        rule.nodes.push_back(solver.eigenvalues()(k));
        const long double v0 = solver.eigenvectors()(0, k);
        rule.weights.push_back(v0 * v0);
    }
    return rule;
}

/// P_{n+1}(E) of the oscillator-Coulomb series by direct recursion in C,
/// with E = 2B(n+1+a+gamma), in double.
inline double coulomb_tail(double a, double gamma, int n, double B, double C) {
    const double E = 2 * B * (n + 1 + a + gamma);
    double pm2 = 0, pm1 = 1;
    for (int k = 1; k <= n + 1; ++k) {
        const double p = -(C * pm1 + (E - 2 * B * (k - 1 + a + gamma)) * pm2) / (k * (2 * a + 2 * gamma + k));
        pm2 = pm1;
        pm1 = p;
    }
    return pm1;
}

/// C^2 > 0 values with P_{n+1} = 0, by scanning C > 0 and bisecting sign changes.
inline std::vector<double> coulomb_scan(double a, double gamma, int n, double B, double c_max, int samples = 200000) {
    std::vector<double> out;
    double prev_c = c_max / samples, prev = coulomb_tail(a, gamma, n, B, prev_c);
    for (int i = 2; i <= samples; ++i) {
        const double c = c_max * i / samples;
        const double v = coulomb_tail(a, gamma, n, B, c);
        if ((v > 0) != (prev > 0)) {
            double lo = prev_c, hi = c, flo = prev;
            for (int it = 0; it < 200; ++it) {
                const double mid = (lo + hi) / 2;
                const double fm = coulomb_tail(a, gamma, n, B, mid);
                if ((fm > 0) == (flo > 0)) {
                    lo = mid;
                    flo = fm;
                } else {
                    hi = mid;
                }
            }
            out.push_back(std::pow((lo + hi) / 2, 2));
        }
        prev_c = c;
        prev = v;
    }
    return out;
}

inline long double rel_diff(long double x, long double y) {
    return std::fabs(x - y) / std::max(1.0L, std::max(std::fabs(x), std::fabs(y)));
}

/// |x - y| / max(1, |y|) as a Scalar in the float mode of the arguments.
inline Scalar rel_error(const Scalar& x, const Scalar& y) {
    Scalar scale = abs(y);
    if (scale < 1) scale = scale.like(1);
    return abs(x - y) / scale;
}

}  // namespace qes::test
