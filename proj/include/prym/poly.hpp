#pragma once

// Dense univariate polynomials over a finite field, coefficients as element
// ids in ascending degree order.

#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "field.hpp"

namespace prym {

class Poly {
public:
    Poly() = default;
    Poly(const Field* f, std::vector<std::uint32_t> coeffs) : field_(f), c_(std::move(coeffs)) { normalize(); }

    static Poly zero(const Field* f) { return Poly(f, {}); }
    static Poly constant(const Field* f, std::uint32_t v) { return Poly(f, {v}); }

    const Field* field() const { return field_; }
    const std::vector<std::uint32_t>& coeffs() const { return c_; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for the zero polynomial
    bool is_zero() const { return c_.empty(); }
    std::uint32_t leading() const { return c_.empty() ? 0u : c_.back(); }
    std::uint32_t coeff(std::size_t i) const { return i < c_.size() ? c_[i] : 0u; }

    std::uint32_t eval(std::uint32_t x) const { return field_->eval(c_, x); }

    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

    friend Poly operator+(const Poly& a, const Poly& b) {
        std::vector<std::uint32_t> r(std::max(a.c_.size(), b.c_.size()), 0);
        for (std::size_t i = 0; i < r.size(); ++i) r[i] = a.field_->add(a.coeff(i), b.coeff(i));
        return Poly(a.field_, std::move(r));
    }

    friend Poly operator-(const Poly& a, const Poly& b) {
        std::vector<std::uint32_t> r(std::max(a.c_.size(), b.c_.size()), 0);
        for (std::size_t i = 0; i < r.size(); ++i) r[i] = a.field_->sub(a.coeff(i), b.coeff(i));
        return Poly(a.field_, std::move(r));
    }

    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return zero(a.field_);
        std::vector<std::uint32_t> r(a.c_.size() + b.c_.size() - 1, 0);
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i] == 0) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j)
                r[i + j] = a.field_->add(r[i + j], a.field_->mul(a.c_[i], b.c_[j]));
        }
        return Poly(a.field_, std::move(r));
    }

    Poly scaled(std::uint32_t s) const {
        std::vector<std::uint32_t> r(c_.size());
        for (std::size_t i = 0; i < c_.size(); ++i) r[i] = field_->mul(c_[i], s);
        return Poly(field_, std::move(r));
    }

    Poly monic() const {
        if (is_zero() || leading() == 1) return *this;
        return scaled(field_->inv(leading()));
    }

    Poly derivative() const {
        if (c_.size() <= 1) return zero(field_);
        std::vector<std::uint32_t> r(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i) {
            std::uint32_t k = static_cast<std::uint32_t>(i % static_cast<std::size_t>(field_->p()));
            r[i - 1] = field_->mul(c_[i], k);
        }
        return Poly(field_, std::move(r));
    }

    // Remainder of *this by b.
    Poly mod(const Poly& b) const {
        std::vector<std::uint32_t> a = c_;
        const auto& d = b.c_;
        std::uint32_t linv = field_->inv(b.leading());
        while (a.size() >= d.size() && !a.empty()) {
            if (a.back() == 0) { a.pop_back(); continue; }
            std::uint32_t q = field_->mul(a.back(), linv);
            std::size_t off = a.size() - d.size();
            for (std::size_t t = 0; t < d.size(); ++t) a[off + t] = field_->sub(a[off + t], field_->mul(q, d[t]));
            a.pop_back();
        }
        return Poly(field_, std::move(a));
    }

    // f(a*x + b)
    Poly compose_affine(std::uint32_t a, std::uint32_t b) const {
        Poly lin(field_, {b, a});
        Poly r = zero(field_);
        for (std::size_t i = c_.size(); i-- > 0;) r = r * lin + constant(field_, c_[i]);
        return r;
    }

    std::string to_string() const {
        std::ostringstream os;
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (i) os << ',';
            os << c_[i];
        }
        return os.str();
    }

private:
    const Field* field_ = nullptr;
    std::vector<std::uint32_t> c_;

    void normalize() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
};

inline Poly poly_gcd(Poly a, Poly b) {
    while (!b.is_zero()) {
        Poly r = a.mod(b);
        a = b;
        b = r;
    }
    return a.is_zero() ? a : a.monic();
}

// gcd(f, f') constant and f nonzero.
inline bool is_squarefree(const Poly& f) {
    if (f.is_zero()) return false;
    if (f.degree() == 0) return true;
    Poly d = f.derivative();
    if (d.is_zero()) return false;  // p-th power (cannot happen for squarefree deg < p cases but checked anyway)
    return poly_gcd(f, d).degree() == 0;
}

inline Poly parse_poly(const Field* f, const std::string& s) {
    std::vector<std::uint32_t> c;
    std::istringstream is(s);
    std::string tok;
    while (std::getline(is, tok, ',')) {
        if (tok.empty()) continue;
        long v = std::stol(tok);
        if (v < 0 || v >= f->size()) throw std::invalid_argument("coefficient out of range");
        c.push_back(static_cast<std::uint32_t>(v));
    }
    return Poly(f, std::move(c));
}

}  // namespace prym
