#pragma once

// Double covers y^2 = f(x) of the projective line over F_q and exact point
// counting over F_{q^k} by quadratic-character sums.

#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>

#include "field.hpp"
#include "poly.hpp"

namespace prym {

struct PointCount {
    int k = 1;
    std::int64_t n = 0;
};

// y^2 = twist * f(x), f squarefree.  The twist scalar is kept separate so the
// enumerators can iterate monic f with a twist class; roots and branching
// depend on f only.
struct HyperellipticModel {
    FieldPtr base;       // F_q, i.e. make_field(p, e, 1)
    Poly f;              // squarefree, nonconstant
    std::uint32_t twist = 1;

    Poly effective() const { return twist == 1 ? f : f.scaled(twist); }
    std::uint32_t leading() const { return base->mul(twist, f.leading()); }
};

inline HyperellipticModel make_model(FieldPtr base, Poly f, std::uint32_t twist = 1) {
    if (f.degree() < 1) throw std::invalid_argument("branch polynomial must be nonconstant");
    if (twist == 0) throw std::invalid_argument("twist must be nonzero");
    if (!is_squarefree(f)) throw std::invalid_argument("branch polynomial must be squarefree");
    return HyperellipticModel{std::move(base), std::move(f), twist};
}

inline int genus(const HyperellipticModel& c) {
    int d = c.f.degree();
    return (d + 1) / 2 - 1;
}

// Degree of the branch divisor: deg f, plus infinity when deg f is odd.
inline int branch_degree(const HyperellipticModel& c) {
    int d = c.f.degree();
    return d + (d % 2);
}

inline bool branch_divisor_disjoint(const HyperellipticModel& a, const HyperellipticModel& b) {
    if (a.base->size() != b.base->size() || a.base->p() != b.base->p())
        throw std::invalid_argument("models live over different fields");
    if (a.f.degree() % 2 == 1 && b.f.degree() % 2 == 1) return false;  // both branch at infinity
    return poly_gcd(a.f, b.f).degree() == 0;
}

namespace detail {

// Coefficients of a level-1 polynomial embedded into F_{q^k}.
inline std::vector<std::uint32_t> embed_coeffs(const Field& fk, const Poly& f) {
    std::vector<std::uint32_t> out(f.coeffs().size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = fk.embed_base(f.coeffs()[i]);
    return out;
}

// Points above infinity of y^2 = f for a polynomial with leading coefficient
// lc (nonzero, in F_q) over F_{q^k}: one if deg f is odd, else 1 + chi_k(lc).
inline std::int64_t infinity_points(int deg, int chi_base_of_lc, int k) {
    if (deg % 2 == 1) return 1;
    int chik = (k % 2 == 0) ? 1 : chi_base_of_lc;
    return 1 + chik;
}

}  // namespace detail

inline PointCount count_points(const HyperellipticModel& c, int k, std::int64_t ceiling = kDefaultCeiling) {
    const Field& b = *c.base;
    FieldPtr fk = make_field(b.p(), b.e(), k, ceiling);
    auto coeffs = detail::embed_coeffs(*fk, c.effective());
    auto sums = fk->char_sums(coeffs);
    std::int64_t n = fk->size() + sums.s1 + detail::infinity_points(c.f.degree(), b.chi(c.leading()), k);
    // Weil bound sanity: |n - (q^k + 1)|^2 <= 4 g^2 q^k
    std::int64_t g = genus(c);
    std::int64_t dev = n - (fk->size() + 1);
    if (dev * dev > 4 * g * g * fk->size()) throw std::logic_error("point count outside the Weil bound");
    return PointCount{k, n};
}

inline std::string serialize_model(const HyperellipticModel& c) {
    std::ostringstream os;
    os << c.base->p() << ',' << c.base->e() << ';' << c.effective().to_string();
    return os.str();
}

inline HyperellipticModel parse_model(const std::string& s, std::int64_t ceiling = kDefaultCeiling) {
    auto semi = s.find(';');
    if (semi == std::string::npos) throw std::invalid_argument("bad model string");
    auto comma = s.find(',');
    if (comma == std::string::npos || comma > semi) throw std::invalid_argument("bad model string");
    std::int64_t p = std::stoll(s.substr(0, comma));
    int e = std::stoi(s.substr(comma + 1, semi - comma - 1));
    FieldPtr base = make_field(p, e, 1, ceiling);
    Poly f = parse_poly(base.get(), s.substr(semi + 1));
    return make_model(base, f);
}

}  // namespace prym
