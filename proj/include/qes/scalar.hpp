#pragma once

/**
 * @file scalar.hpp
 * @brief Two-mode number type used throughout the library.
 *
 * A Scalar is either an exact rational (GMP) or a binary floating point
 * number of fixed precision (MPFR). Arithmetic never promotes between
 * modes: combining an exact value with a float, or two floats of different
 * precision, throws ModeMismatch. Plain integers are mode-neutral and adopt
 * the mode of the Scalar they are combined with.
 */

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

#include <gmpxx.h>
#include <mpfr.h>

namespace qes {

inline constexpr unsigned kDefaultFloatBits = 128;

class ModeMismatch : public std::logic_error {
  public:
    using std::logic_error::logic_error;
};

/// Raised when an exact operation has no rational result (e.g. sqrt(2)).
class InexactError : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

struct ScalarMode {
    enum class Kind { exact, floating };

    Kind kind = Kind::exact;
    unsigned bits = 0;  // mantissa bits; 0 in exact mode

    static constexpr ScalarMode exact() { return {Kind::exact, 0}; }
    static constexpr ScalarMode floating(unsigned bits = kDefaultFloatBits) {
        return {Kind::floating, bits};
    }

    bool is_exact() const { return kind == Kind::exact; }
    std::string name() const;

    friend bool operator==(const ScalarMode&, const ScalarMode&) = default;
};

/// RAII owner of an mpfr_t with a fixed precision.
class BigFloat {
  public:
    explicit BigFloat(unsigned bits = kDefaultFloatBits);
    BigFloat(const BigFloat& other);
    BigFloat(BigFloat&& other) noexcept;
    BigFloat& operator=(const BigFloat& other);
    BigFloat& operator=(BigFloat&& other) noexcept;
    ~BigFloat();

    static BigFloat from_rational(const mpq_class& q, unsigned bits);
    static BigFloat from_long_double(long double v, unsigned bits);
    static BigFloat from_decimal(std::string_view text, unsigned bits);

    unsigned bits() const { return static_cast<unsigned>(mpfr_get_prec(value_)); }
    mpfr_srcptr get() const { return value_; }
    mpfr_ptr get() { return value_; }

    long double to_long_double() const { return mpfr_get_ld(value_, MPFR_RNDN); }
    mpq_class to_rational() const;
    /// Scientific notation with `digits` significant digits.
    std::string to_string(int digits) const;

  private:
    mpfr_t value_;
};

class Scalar {
  public:
    /// Exact zero.
    Scalar();

    static Scalar exact(const mpq_class& q);
    static Scalar exact(long num, long den = 1);
    static Scalar floating(const BigFloat& f);
    static Scalar floating(long double v, unsigned bits = kDefaultFloatBits);

    /// Integer value in the given mode.
    static Scalar integer(long v, ScalarMode mode);
    /// Rational value converted into the given mode (rounded in float mode).
    static Scalar rational(const mpq_class& q, ScalarMode mode);

    /// Parses "p/q", "p", or a decimal literal such as "-1.25e-3".
    /// Decimal literals are read exactly in exact mode.
    static Scalar parse(std::string_view text, ScalarMode mode);

    ScalarMode mode() const;
    bool is_exact() const { return std::holds_alternative<mpq_class>(value_); }
    bool is_zero() const;
    int sign() const;
    bool is_integer() const;

    const mpq_class& as_rational() const;
    const BigFloat& as_float() const;

    /// Same value in another mode. Float -> exact conversion is exact
    /// (binary floats are dyadic rationals).
    Scalar to_mode(ScalarMode mode) const;
    /// Integer in this Scalar's mode.
    Scalar like(long v) const { return integer(v, mode()); }

    long double to_long_double() const;
    /// Decimal rendering with `digits` significant digits.
    std::string decimal(int digits = 20) const;
    /// "p/q" in exact mode; decimal(digits) in float mode.
    std::string to_string(int digits = 20) const;

    Scalar operator-() const;
    Scalar& operator+=(const Scalar& rhs);
    Scalar& operator-=(const Scalar& rhs);
    Scalar& operator*=(const Scalar& rhs);
    Scalar& operator/=(const Scalar& rhs);

    friend Scalar operator+(Scalar lhs, const Scalar& rhs) { return lhs += rhs; }
    friend Scalar operator-(Scalar lhs, const Scalar& rhs) { return lhs -= rhs; }
    friend Scalar operator*(Scalar lhs, const Scalar& rhs) { return lhs *= rhs; }
    friend Scalar operator/(Scalar lhs, const Scalar& rhs) { return lhs /= rhs; }

    friend Scalar operator+(const Scalar& lhs, long rhs) { return lhs + lhs.like(rhs); }
    friend Scalar operator-(const Scalar& lhs, long rhs) { return lhs - lhs.like(rhs); }
    friend Scalar operator*(const Scalar& lhs, long rhs) { return lhs * lhs.like(rhs); }
    friend Scalar operator/(const Scalar& lhs, long rhs) { return lhs / lhs.like(rhs); }
    friend Scalar operator+(long lhs, const Scalar& rhs) { return rhs.like(lhs) + rhs; }
    friend Scalar operator-(long lhs, const Scalar& rhs) { return rhs.like(lhs) - rhs; }
    friend Scalar operator*(long lhs, const Scalar& rhs) { return rhs.like(lhs) * rhs; }
    friend Scalar operator/(long lhs, const Scalar& rhs) { return rhs.like(lhs) / rhs; }

    /// Three-way comparison; throws ModeMismatch across modes.
    int compare(const Scalar& rhs) const;
    int compare(long rhs) const { return compare(like(rhs)); }

    friend bool operator==(const Scalar& a, const Scalar& b) { return a.compare(b) == 0; }
    friend std::strong_ordering operator<=>(const Scalar& a, const Scalar& b) {
        return a.compare(b) <=> 0;
    }
    friend bool operator==(const Scalar& a, long b) { return a.compare(b) == 0; }
    friend std::strong_ordering operator<=>(const Scalar& a, long b) { return a.compare(b) <=> 0; }

  private:
    explicit Scalar(mpq_class q);
    explicit Scalar(BigFloat f);

    std::variant<mpq_class, BigFloat> value_;
};

Scalar abs(const Scalar& x);
/// Exact mode: exact root of a perfect-square rational, otherwise InexactError.
Scalar sqrt(const Scalar& x);
Scalar pow(const Scalar& x, unsigned n);
/// x * 2^e, exact in both modes.
Scalar ldexp(const Scalar& x, long e);
/// Round to nearest integer (ties away from zero); result in x's mode.
Scalar round(const Scalar& x);

/// Throws ModeMismatch unless both modes agree.
void require_same_mode(const Scalar& a, const Scalar& b);

}  // namespace qes
