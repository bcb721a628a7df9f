#include "qes/poly.hpp"

#include <algorithm>
#include <stdexcept>

namespace qes {

PolyE::PolyE(ScalarMode mode) : mode_(mode) {}

PolyE::PolyE(std::vector<Scalar> coeffs) : coeffs_(std::move(coeffs)) {
    mode_ = coeffs_.empty() ? ScalarMode::exact() : coeffs_.front().mode();
    for (const auto& c : coeffs_) {
        if (c.mode() != mode_) throw ModeMismatch("polynomial coefficients with mixed modes");
    }
    normalize();
}

PolyE::PolyE(std::vector<Scalar> coeffs, ScalarMode mode) : coeffs_(std::move(coeffs)), mode_(mode) {
    for (const auto& c : coeffs_) {
        if (c.mode() != mode_) throw ModeMismatch("polynomial coefficients with mixed modes");
    }
    normalize();
}

PolyE PolyE::constant(const Scalar& c) { return PolyE({c}, c.mode()); }

PolyE PolyE::monomial(const Scalar& c, std::size_t n) {
    std::vector<Scalar> cs(n + 1, c.like(0));
    cs[n] = c;
    return PolyE(std::move(cs), c.mode());
}

PolyE PolyE::identity(ScalarMode mode) { return monomial(Scalar::integer(1, mode), 1); }

void PolyE::normalize() {
    while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

std::optional<std::size_t> PolyE::degree() const {
    if (coeffs_.empty()) return std::nullopt;
    return coeffs_.size() - 1;
}

Scalar PolyE::operator[](std::size_t i) const {
    return i < coeffs_.size() ? coeffs_[i] : Scalar::integer(0, mode_);
}

Scalar PolyE::leading() const {
    if (coeffs_.empty()) throw std::domain_error("zero polynomial has no leading coefficient");
    return coeffs_.back();
}

PolyE PolyE::operator-() const {
    PolyE out(*this);
    for (auto& c : out.coeffs_) c = -c;
    return out;
}

PolyE& PolyE::operator+=(const PolyE& rhs) {
    if (mode_ != rhs.mode_) throw ModeMismatch("polynomial addition across modes");
    if (coeffs_.size() < rhs.coeffs_.size()) coeffs_.resize(rhs.coeffs_.size(), Scalar::integer(0, mode_));
    for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i] += rhs.coeffs_[i];
    normalize();
    return *this;
}

PolyE& PolyE::operator-=(const PolyE& rhs) {
    if (mode_ != rhs.mode_) throw ModeMismatch("polynomial subtraction across modes");
    if (coeffs_.size() < rhs.coeffs_.size()) coeffs_.resize(rhs.coeffs_.size(), Scalar::integer(0, mode_));
    for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i] -= rhs.coeffs_[i];
    normalize();
    return *this;
}

PolyE& PolyE::operator*=(const PolyE& rhs) {
    if (mode_ != rhs.mode_) throw ModeMismatch("polynomial product across modes");
    if (is_zero() || rhs.is_zero()) {
        coeffs_.clear();
        return *this;
    }
    std::vector<Scalar> out(coeffs_.size() + rhs.coeffs_.size() - 1, Scalar::integer(0, mode_));
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (coeffs_[i].is_zero()) continue;
        for (std::size_t j = 0; j < rhs.coeffs_.size(); ++j) out[i + j] += coeffs_[i] * rhs.coeffs_[j];
    }
    coeffs_ = std::move(out);
    normalize();
    return *this;
}

PolyE& PolyE::operator*=(const Scalar& c) {
    if (c.mode() != mode_) throw ModeMismatch("polynomial scaling across modes");
    for (auto& x : coeffs_) x *= c;
    normalize();
    return *this;
}

bool operator==(const PolyE& a, const PolyE& b) {
    if (a.mode_ != b.mode_) throw ModeMismatch("polynomial comparison across modes");
    if (a.coeffs_.size() != b.coeffs_.size()) return false;
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
        if (a.coeffs_[i] != b.coeffs_[i]) return false;
    }
    return true;
}

Scalar eval_poly(const PolyE& p, const Scalar& e) {
    if (p.mode() != e.mode()) throw ModeMismatch("evaluating a " + p.mode().name() + " polynomial at a " + e.mode().name() + " point");
    const auto& c = p.coeffs();
    Scalar acc = e.like(0);
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
        acc *= e;
        acc += *it;
    }
    return acc;
}

DivisionResult poly_divide(const PolyE& numerator, const PolyE& divisor) {
    if (divisor.is_zero()) throw std::domain_error("polynomial division by zero");
    if (numerator.mode() != divisor.mode()) throw ModeMismatch("polynomial division across modes");
    const ScalarMode mode = numerator.mode();
    const std::size_t dd = *divisor.degree();
    if (numerator.is_zero() || *numerator.degree() < dd) return {PolyE(mode), numerator};

    std::vector<Scalar> rem = numerator.coeffs();
    const std::size_t nd = rem.size() - 1;
    std::vector<Scalar> quot(nd - dd + 1, Scalar::integer(0, mode));
    const Scalar lead = divisor.leading();
    for (std::size_t k = nd + 1; k-- > dd;) {
        Scalar q = rem[k] / lead;
        quot[k - dd] = q;
        if (q.is_zero()) continue;
        for (std::size_t j = 0; j < dd; ++j) rem[k - dd + j] -= q * divisor.coeffs()[j];
        // Eliminated exactly, also in float mode.
        rem[k] = Scalar::integer(0, mode);
    }
    rem.resize(dd);
    return {PolyE(std::move(quot), mode), PolyE(std::move(rem), mode)};
}

PolyE derivative(const PolyE& p) {
    if (p.coeffs().size() <= 1) return PolyE(p.mode());
    std::vector<Scalar> out;
    out.reserve(p.coeffs().size() - 1);
    for (std::size_t i = 1; i < p.coeffs().size(); ++i) out.push_back(p.coeffs()[i] * static_cast<long>(i));
    return PolyE(std::move(out), p.mode());
}

PolyE reflect(const PolyE& p) {
    std::vector<Scalar> out = p.coeffs();
    for (std::size_t i = 1; i < out.size(); i += 2) out[i] = -out[i];
    return PolyE(std::move(out), p.mode());
}

PolyE monic(const PolyE& p) {
    if (p.is_zero()) return p;
    Scalar inv = p.leading().like(1) / p.leading();
    return p * inv;
}

std::ostream& operator<<(std::ostream& os, const PolyE& p) {
    if (p.is_zero()) return os << "0";
    bool first = true;
    for (std::size_t i = p.coeffs().size(); i-- > 0;) {
        const Scalar& c = p.coeffs()[i];
        if (c.is_zero()) continue;
        if (!first) os << " + ";
        first = false;
        os << "(" << c.to_string() << ")";
        if (i >= 1) os << "*E";
        if (i >= 2) os << "^" << i;
    }
    return os;
}

}  // namespace qes
