#pragma once

// Exact extremal point counts: the dimension-1 extremes, the dimension-2
// Prym extremes, and the two tables of extremal abelian-surface types.
// Everything here is integer arithmetic; fractional-part threshold tests
// against (sqrt5-1)/2, sqrt2-1 and sqrt3-1 are nested-squaring predicates.

#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "field.hpp"
#include "weil.hpp"

namespace prym {

struct SqrtClass {
    PrimePower q;
    std::int64_t m = 0;  // floor(2 sqrt q)
    bool is_square = false;
    bool frac_ge_golden = false;  // {2 sqrt q} >= (sqrt5 - 1)/2
    bool frac_ge_sqrt2 = false;   // {2 sqrt q} >= sqrt2 - 1
    bool frac_ge_sqrt3 = false;   // {2 sqrt q} >= sqrt3 - 1
};

inline SqrtClass sqrt_class(const PrimePower& pp) {
    SqrtClass out;
    out.q = pp;
    const std::int64_t q = pp.q;
    out.m = isqrt64(4 * q);
    out.is_square = (pp.e % 2 == 0);
    const std::int64_t m = out.m;
    // {2 sqrt q} >= (sqrt5-1)/2  <=>  4 sqrt q - (2m - 1) >= sqrt 5; both sides
    // positive, so square twice with a nonnegativity check in between.
    {
        __int128 a = static_cast<__int128>(16) * q + static_cast<std::int64_t>(2 * m - 1) * (2 * m - 1) - 5;
        if (a < 0) throw std::logic_error("threshold lhs unexpectedly negative");
        out.frac_ge_golden = a * a >= static_cast<__int128>(64) * (2 * m - 1) * (2 * m - 1) * q;
    }
    // {2 sqrt q} >= sqrt2 - 1  <=>  2 sqrt q - (m-1) >= sqrt 2
    {
        std::int64_t t = m - 1;
        __int128 a = static_cast<__int128>(4) * q + static_cast<__int128>(t) * t - 2;
        out.frac_ge_sqrt2 = a >= 0 && a * a >= static_cast<__int128>(16) * t * t * q;
    }
    // {2 sqrt q} >= sqrt3 - 1
    {
        std::int64_t t = m - 1;
        __int128 a = static_cast<__int128>(4) * q + static_cast<__int128>(t) * t - 3;
        out.frac_ge_sqrt3 = a >= 0 && a * a >= static_cast<__int128>(16) * t * t * q;
    }
    return out;
}

// Deuring-Waterhouse tri-condition shared by all the first bullets.
inline bool first_case(const PrimePower& pp, std::int64_t m) {
    return pp.e == 1 || pp.e % 2 == 0 || m % pp.p != 0;
}

struct ExactValue {
    std::int64_t value = 0;
    std::string case_name;
};

struct EllipticExtremes {
    ExactValue max, min;
};

inline EllipticExtremes elliptic_extremes(const PrimePower& pp) {
    SqrtClass sc = sqrt_class(pp);
    const std::int64_t q = pp.q, m = sc.m;
    if (first_case(pp, m))
        return {{q + 1 + m, "e=1 or e even or p!|m"}, {q + 1 - m, "e=1 or e even or p!|m"}};
    return {{q + m, "e odd >1 and p|m"}, {q + 2 - m, "e odd >1 and p|m"}};
}

// Maximum number of points on a Prym surface over F_q.
inline ExactValue prym_max_2(const PrimePower& pp) {
    SqrtClass sc = sqrt_class(pp);
    const std::int64_t q = pp.q, m = sc.m, b = q + 1 + m;
    if (first_case(pp, m)) return {b * b, "e=1 or e even or p!|m"};
    if (sc.frac_ge_golden) return {b * b - b - 1, "frac(2sqrt(q)) >= (sqrt5-1)/2"};
    return {(q + m) * (q + m), "fallback"};
}

// Minimum number of points on a Prym surface over F_q.
inline ExactValue prym_min_2(const PrimePower& pp) {
    SqrtClass sc = sqrt_class(pp);
    const std::int64_t q = pp.q, m = sc.m, bp = q + 1 - m;
    if (first_case(pp, m)) return {bp * bp, "e=1 or e even or p!|m"};
    if (sc.frac_ge_golden) return {bp * bp + bp - 1, "frac(2sqrt(q)) >= (sqrt5-1)/2"};
    if (sc.frac_ge_sqrt2) return {(q + 2 - m) * (q + 2 - m) - 2, "sqrt2-1 <= frac(2sqrt(q)) < (sqrt5-1)/2"};
    return {(q + 2 - m) * (q + 2 - m), "fallback"};
}

struct TableRow {
    std::int64_t a1 = 0, a2 = 0;
    std::string type;
    std::string formula;
    std::int64_t count = 0;  // q^2 + 1 + (q+1) a1 + a2; exact integer even for irrational types
    bool exists = false;     // the type is realized by real numbers of absolute value <= 2 sqrt q
    std::string note;
};

namespace detail {

inline std::int64_t surface_count(std::int64_t q, std::int64_t a1, std::int64_t a2) {
    return q * q + 1 + (q + 1) * a1 + a2;
}

inline std::string int_type(std::int64_t x, std::int64_t y) {
    std::ostringstream os;
    os << '[' << x << ',' << y << ']';
    return os.str();
}

inline std::string irr_type(std::int64_t c, const char* tail1, const char* tail2) {
    std::ostringstream os;
    os << '[' << c << tail1 << ',' << c << tail2 << ']';
    return os.str();
}

}  // namespace detail

// The seven (a1, a2) rows with a1 >= 2m - 2, in decreasing count order.
inline std::vector<TableRow> table_max(const PrimePower& pp) {
    SqrtClass sc = sqrt_class(pp);
    const std::int64_t q = pp.q, m = sc.m;
    using detail::int_type;
    using detail::irr_type;
    using detail::surface_count;
    std::vector<TableRow> rows;
    auto push = [&](std::int64_t a1, std::int64_t a2, std::string type, std::string formula, bool exists,
                    std::string note) {
        rows.push_back(TableRow{a1, a2, std::move(type), std::move(formula), surface_count(q, a1, a2), exists,
                                std::move(note)});
    };
    bool fc = first_case(pp, m);
    push(2 * m, m * m + 2 * q, int_type(m, m), "b^2", true,
         fc ? "product of elliptic curves of trace -m" : "no elliptic curve of trace -m");
    push(2 * m - 1, m * m - m + 2 * q, int_type(m, m - 1), "b(b-1)", true,
         fc ? "product of elliptic curves of traces -m, -(m-1)" : "no elliptic curve of trace -m");
    push(2 * m - 1, m * m - m - 1 + 2 * q, irr_type(m, "+(-1+sqrt5)/2", "+(-1-sqrt5)/2"), "b^2-b-1",
         sc.frac_ge_golden, "Jacobian of a genus-2 curve when it exists");
    push(2 * m - 2, m * m - 2 * m + 1 + 2 * q, int_type(m - 1, m - 1), "(b-1)^2", true,
         "product of elliptic curves of trace -(m-1)");
    push(2 * m - 2, m * m - 2 * m + 2 * q, int_type(m, m - 2), "b(b-2)", true,
         fc ? "product of elliptic curves of traces -m, -(m-2)" : "no elliptic curve of trace -m");
    push(2 * m - 2, m * m - 2 * m - 1 + 2 * q, irr_type(m - 1, "+sqrt2", "-sqrt2"), "(b-1)^2-2", sc.frac_ge_sqrt2,
         "no sqrt2 case in the maximum analysis; listed for completeness");
    push(2 * m - 2, m * m - 2 * m - 2 + 2 * q, irr_type(m - 1, "+sqrt3", "-sqrt3"), "(b-1)^2-3", sc.frac_ge_sqrt3,
         "");
    return rows;
}

// The seven (a1, a2) rows with a1 <= -2m + 2, in increasing count order
// (correct ordering requires q > 5).
inline std::vector<TableRow> table_min(const PrimePower& pp) {
    if (pp.q <= 5) throw std::invalid_argument("the minimizing table is only ordered for q > 5");
    SqrtClass sc = sqrt_class(pp);
    const std::int64_t q = pp.q, m = sc.m;
    using detail::int_type;
    using detail::irr_type;
    using detail::surface_count;
    std::vector<TableRow> rows;
    auto push = [&](std::int64_t a1, std::int64_t a2, std::string type, std::string formula, bool exists,
                    std::string note) {
        rows.push_back(TableRow{a1, a2, std::move(type), std::move(formula), surface_count(q, a1, a2), exists,
                                std::move(note)});
    };
    bool fc = first_case(pp, m);
    push(-2 * m, m * m + 2 * q, int_type(-m, -m), "b'^2", true,
         fc ? "product of elliptic curves of trace m" : "no elliptic curve of trace m");
    push(-2 * m + 1, m * m - m - 1 + 2 * q, irr_type(-m, "+(1+sqrt5)/2", "+(1-sqrt5)/2"), "b'^2+b'-1",
         sc.frac_ge_golden, "Jacobian of a genus-2 curve when it exists");
    push(-2 * m + 1, m * m - m + 2 * q, int_type(-m, -(m - 1)), "b'(b'+1)", true,
         fc ? "product of elliptic curves of traces m, m-1" : "no elliptic curve of trace m");
    push(-2 * m + 2, m * m - 2 * m - 2 + 2 * q, irr_type(-(m - 1), "+sqrt3", "-sqrt3"), "(b'+1)^2-3",
         sc.frac_ge_sqrt3, "");
    push(-2 * m + 2, m * m - 2 * m - 1 + 2 * q, irr_type(-(m - 1), "+sqrt2", "-sqrt2"), "(b'+1)^2-2",
         sc.frac_ge_sqrt2, "Jacobian of a genus-2 curve when it exists");
    push(-2 * m + 2, m * m - 2 * m + 2 * q, int_type(-m, -(m - 2)), "b'(b'+2)", true,
         fc ? "product of elliptic curves of traces m, m-2" : "no elliptic curve of trace m");
    push(-2 * m + 2, m * m - 2 * m + 1 + 2 * q, int_type(-(m - 1), -(m - 1)), "(b'+1)^2", true,
         "product of elliptic curves of trace m-1");
    return rows;
}

inline std::string tables_csv(const std::vector<TableRow>& rows) {
    std::ostringstream os;
    os << "a1,a2,type,count,exists,prym_realizable_note\n";
    for (const auto& r : rows) {
        os << r.a1 << ',' << r.a2 << ',' << '"' << r.type << '"' << ',' << r.count << ','
           << (r.exists ? "true" : "false") << ',' << '"' << r.note << '"' << '\n';
    }
    return os.str();
}

}  // namespace prym
