#include "qes/scalar.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <vector>

namespace qes {

std::string ScalarMode::name() const {
    if (is_exact()) return "exact";
    return "float" + std::to_string(bits);
}

// ---------------------------------------------------------------- BigFloat

BigFloat::BigFloat(unsigned bits) {
    mpfr_init2(value_, static_cast<mpfr_prec_t>(bits));
    mpfr_set_zero(value_, 1);
}

BigFloat::BigFloat(const BigFloat& other) {
    mpfr_init2(value_, mpfr_get_prec(other.value_));
    mpfr_set(value_, other.value_, MPFR_RNDN);
}

BigFloat::BigFloat(BigFloat&& other) noexcept {
    mpfr_init2(value_, mpfr_get_prec(other.value_));
    mpfr_swap(value_, other.value_);
}

BigFloat& BigFloat::operator=(const BigFloat& other) {
    if (this != &other) {
        mpfr_set_prec(value_, mpfr_get_prec(other.value_));
        mpfr_set(value_, other.value_, MPFR_RNDN);
    }
    return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& other) noexcept {
    mpfr_swap(value_, other.value_);
    return *this;
}

BigFloat::~BigFloat() { mpfr_clear(value_); }

BigFloat BigFloat::from_rational(const mpq_class& q, unsigned bits) {
    BigFloat f(bits);
    mpfr_set_q(f.value_, q.get_mpq_t(), MPFR_RNDN);
    return f;
}

BigFloat BigFloat::from_long_double(long double v, unsigned bits) {
    BigFloat f(bits);
    mpfr_set_ld(f.value_, v, MPFR_RNDN);
    return f;
}

BigFloat BigFloat::from_decimal(std::string_view text, unsigned bits) {
    BigFloat f(bits);
    std::string s(text);
    if (mpfr_set_str(f.value_, s.c_str(), 10, MPFR_RNDN) != 0) {
        throw std::invalid_argument("not a decimal number: '" + s + "'");
    }
    return f;
}

mpq_class BigFloat::to_rational() const {
    if (!mpfr_number_p(value_)) throw std::domain_error("non-finite float has no rational value");
    if (mpfr_zero_p(value_)) return 0;
    mpz_class mant;
    mpfr_exp_t exp = mpfr_get_z_2exp(mant.get_mpz_t(), value_);
    mpq_class q(mant);
    if (exp >= 0) {
        mpq_mul_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(exp));
    } else {
        mpq_div_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(-exp));
    }
    q.canonicalize();
    return q;
}

std::string BigFloat::to_string(int digits) const {
    if (mpfr_zero_p(value_)) return "0";
    int prec = digits > 1 ? digits - 1 : 0;
    int n = mpfr_snprintf(nullptr, 0, "%.*Re", prec, value_);
    std::vector<char> buf(static_cast<size_t>(n) + 1);
    mpfr_snprintf(buf.data(), buf.size(), "%.*Re", prec, value_);
    return std::string(buf.data(), static_cast<size_t>(n));
}

// ------------------------------------------------------------------ Scalar

namespace {

mpq_class parse_decimal_exact(std::string_view text) {
    size_t i = 0;
    bool negative = false;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
        negative = text[i] == '-';
        ++i;
    }
    std::string digits;
    long frac_digits = 0;
    bool seen_point = false;
    bool any_digit = false;
    for (; i < text.size(); ++i) {
        char c = text[i];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            digits.push_back(c);
            any_digit = true;
            if (seen_point) ++frac_digits;
        } else if (c == '.' && !seen_point) {
            seen_point = true;
        } else {
            break;
        }
    }
    long exponent = 0;
    if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
        ++i;
        std::string exp_text(text.substr(i));
        if (exp_text.empty()) throw std::invalid_argument("malformed exponent");
        size_t used = 0;
        exponent = std::stol(exp_text, &used);
        i += used;
    }
    if (!any_digit || i != text.size()) {
        throw std::invalid_argument("not a number: '" + std::string(text) + "'");
    }
    mpz_class mant(digits, 10);
    if (negative) mant = -mant;
    long shift = exponent - frac_digits;
    mpz_class pow10;
    mpz_ui_pow_ui(pow10.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(shift)));
    mpq_class q = shift >= 0 ? mpq_class(mant * pow10) : mpq_class(mant, pow10);
    q.canonicalize();
    return q;
}

mpq_class parse_rational(std::string_view text) {
    auto slash = text.find('/');
    if (slash == std::string_view::npos) return parse_decimal_exact(text);
    mpq_class num = parse_decimal_exact(text.substr(0, slash));
    mpq_class den = parse_decimal_exact(text.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    return num / den;
}

std::string trim(std::string_view text) {
    size_t b = 0, e = text.size();
    while (b < e && std::isspace(static_cast<unsigned char>(text[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(text[e - 1]))) --e;
    return std::string(text.substr(b, e - b));
}

}  // namespace

Scalar::Scalar() : value_(mpq_class(0)) {}
Scalar::Scalar(mpq_class q) : value_(std::move(q)) {}
Scalar::Scalar(BigFloat f) : value_(std::move(f)) {}

Scalar Scalar::exact(const mpq_class& q) {
    mpq_class c(q);
    c.canonicalize();
    return Scalar(std::move(c));
}

Scalar Scalar::exact(long num, long den) {
    if (den == 0) throw std::domain_error("zero denominator");
    mpq_class q(num, den);
    q.canonicalize();
    return Scalar(std::move(q));
}

Scalar Scalar::floating(const BigFloat& f) { return Scalar(f); }

Scalar Scalar::floating(long double v, unsigned bits) {
    return Scalar(BigFloat::from_long_double(v, bits));
}

Scalar Scalar::integer(long v, ScalarMode mode) {
    if (mode.is_exact()) return Scalar(mpq_class(v));
    BigFloat f(mode.bits);
    mpfr_set_si(f.get(), v, MPFR_RNDN);
    return Scalar(std::move(f));
}

Scalar Scalar::rational(const mpq_class& q, ScalarMode mode) {
    if (mode.is_exact()) return exact(q);
    return Scalar(BigFloat::from_rational(q, mode.bits));
}

Scalar Scalar::parse(std::string_view raw, ScalarMode mode) {
    std::string text = trim(raw);
    if (text.empty()) throw std::invalid_argument("empty number");
    if (mode.is_exact() || text.find('/') != std::string::npos) {
        return rational(parse_rational(text), mode);
    }
    parse_decimal_exact(text);  // validates syntax
    return Scalar(BigFloat::from_decimal(text, mode.bits));
}

ScalarMode Scalar::mode() const {
    if (is_exact()) return ScalarMode::exact();
    return ScalarMode::floating(std::get<BigFloat>(value_).bits());
}

bool Scalar::is_zero() const { return sign() == 0; }

int Scalar::sign() const {
    if (is_exact()) return sgn(std::get<mpq_class>(value_));
    return mpfr_sgn(std::get<BigFloat>(value_).get());
}

bool Scalar::is_integer() const {
    if (is_exact()) return std::get<mpq_class>(value_).get_den() == 1;
    return mpfr_integer_p(std::get<BigFloat>(value_).get()) != 0;
}

const mpq_class& Scalar::as_rational() const {
    if (!is_exact()) throw ModeMismatch("exact value requested from a float Scalar");
    return std::get<mpq_class>(value_);
}

const BigFloat& Scalar::as_float() const {
    if (is_exact()) throw ModeMismatch("float value requested from an exact Scalar");
    return std::get<BigFloat>(value_);
}

Scalar Scalar::to_mode(ScalarMode target) const {
    if (target == mode()) return *this;
    if (target.is_exact()) return Scalar(std::get<BigFloat>(value_).to_rational());
    if (is_exact()) return Scalar(BigFloat::from_rational(std::get<mpq_class>(value_), target.bits));
    BigFloat f(target.bits);
    mpfr_set(f.get(), std::get<BigFloat>(value_).get(), MPFR_RNDN);
    return Scalar(std::move(f));
}

long double Scalar::to_long_double() const {
    if (is_exact()) {
        return BigFloat::from_rational(std::get<mpq_class>(value_), 128).to_long_double();
    }
    return std::get<BigFloat>(value_).to_long_double();
}

std::string Scalar::decimal(int digits) const {
    if (is_exact()) {
        // Enough bits that the rendering is correctly rounded for `digits`.
        unsigned bits = static_cast<unsigned>(digits * 4 + 64);
        return BigFloat::from_rational(std::get<mpq_class>(value_), bits).to_string(digits);
    }
    return std::get<BigFloat>(value_).to_string(digits);
}

std::string Scalar::to_string(int digits) const {
    if (is_exact()) return std::get<mpq_class>(value_).get_str();
    return decimal(digits);
}

void require_same_mode(const Scalar& a, const Scalar& b) {
    if (a.mode() != b.mode()) {
        throw ModeMismatch("mixed scalar modes: " + a.mode().name() + " vs " + b.mode().name());
    }
}

Scalar Scalar::operator-() const {
    if (is_exact()) return Scalar(mpq_class(-std::get<mpq_class>(value_)));
    BigFloat f(std::get<BigFloat>(value_));
    mpfr_neg(f.get(), f.get(), MPFR_RNDN);
    return Scalar(std::move(f));
}

#define QES_SCALAR_COMPOUND(op, mpfr_fn)                                          \
    Scalar& Scalar::operator op##=(const Scalar & rhs) {                          \
        require_same_mode(*this, rhs);                                            \
        if (is_exact()) {                                                         \
            std::get<mpq_class>(value_) op## = std::get<mpq_class>(rhs.value_);   \
        } else {                                                                  \
            BigFloat& f = std::get<BigFloat>(value_);                             \
            mpfr_fn(f.get(), f.get(), std::get<BigFloat>(rhs.value_).get(), MPFR_RNDN); \
        }                                                                         \
        return *this;                                                             \
    }

QES_SCALAR_COMPOUND(+, mpfr_add)
QES_SCALAR_COMPOUND(-, mpfr_sub)
QES_SCALAR_COMPOUND(*, mpfr_mul)
#undef QES_SCALAR_COMPOUND

Scalar& Scalar::operator/=(const Scalar& rhs) {
    require_same_mode(*this, rhs);
    if (rhs.is_zero()) throw std::domain_error("division by zero");
    if (is_exact()) {
        std::get<mpq_class>(value_) /= std::get<mpq_class>(rhs.value_);
    } else {
        BigFloat& f = std::get<BigFloat>(value_);
        mpfr_div(f.get(), f.get(), std::get<BigFloat>(rhs.value_).get(), MPFR_RNDN);
    }
    return *this;
}

int Scalar::compare(const Scalar& rhs) const {
    require_same_mode(*this, rhs);
    if (is_exact()) {
        int c = cmp(std::get<mpq_class>(value_), std::get<mpq_class>(rhs.value_));
        return (c > 0) - (c < 0);
    }
    int c = mpfr_cmp(std::get<BigFloat>(value_).get(), std::get<BigFloat>(rhs.value_).get());
    return (c > 0) - (c < 0);
}

Scalar abs(const Scalar& x) { return x.sign() < 0 ? -x : x; }

Scalar sqrt(const Scalar& x) {
    if (x.sign() < 0) throw std::domain_error("sqrt of a negative number");
    if (x.is_exact()) {
        const mpq_class& q = x.as_rational();
        mpz_class num = q.get_num(), den = q.get_den();
        if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t())) {
            throw InexactError("sqrt(" + q.get_str() + ") is irrational");
        }
        mpz_class rn, rd;
        mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
        mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
        return Scalar::exact(mpq_class(rn, rd));
    }
    BigFloat f(x.as_float());
    mpfr_sqrt(f.get(), f.get(), MPFR_RNDN);
    return Scalar::floating(f);
}

Scalar pow(const Scalar& x, unsigned n) {
    Scalar result = x.like(1);
    Scalar base = x;
    while (n > 0) {
        if (n & 1u) result *= base;
        n >>= 1u;
        if (n > 0) base *= base;
    }
    return result;
}

Scalar ldexp(const Scalar& x, long e) {
    if (x.is_exact()) {
        mpq_class q = x.as_rational();
        if (e >= 0) {
            mpq_mul_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(e));
        } else {
            mpq_div_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(-e));
        }
        return Scalar::exact(q);
    }
    BigFloat f(x.as_float());
    mpfr_mul_2si(f.get(), f.get(), e, MPFR_RNDN);
    return Scalar::floating(f);
}

Scalar round(const Scalar& x) {
    if (x.is_exact()) {
        const mpq_class& q = x.as_rational();
        mpq_class shifted = abs(q) + mpq_class(1, 2);
        mpz_class r;
        mpz_fdiv_q(r.get_mpz_t(), shifted.get_num_mpz_t(), shifted.get_den_mpz_t());
        if (sgn(q) < 0) r = -r;
        return Scalar::exact(mpq_class(r));
    }
    BigFloat f(x.as_float());
    mpfr_round(f.get(), f.get());
    return Scalar::floating(f);
}

}  // namespace qes
