#pragma once

// Weil polynomials of abelian varieties over F_q: construction from point
// counts by Newton's identities, point counts #A(F_q) = f(1), traces tau_k,
// surface types and the Rueck admissibility region.

#include <cstdint>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "field.hpp"

namespace prym {

// Characteristic polynomial of Frobenius, dimension g:
//   f(t) = t^{2g} + a_1 t^{2g-1} + ... + a_g t^g + q a_{g-1} t^{g-1} + ... + q^g
// stored as q, g and a_1..a_g; higher coefficients follow from the functional
// equation a_{2g-i} = q^{g-i} a_i.
struct WeilPolynomial {
    std::int64_t q = 0;
    int g = 0;
    std::vector<std::int64_t> a;  // a_1..a_g (empty for g = 0)

    std::vector<std::int64_t> full_coeffs() const {  // a_0..a_{2g}
        std::vector<std::int64_t> c(2 * g + 1);
        c[0] = 1;
        for (int i = 1; i <= g; ++i) c[i] = a[i - 1];
        std::int64_t qp = 1;
        for (int i = g + 1; i <= 2 * g; ++i) {
            qp *= q;
            c[i] = qp * c[2 * g - i];
        }
        return c;
    }
};

// tau_k = N_k - (q^k + 1): opposite of the Frobenius trace over F_{q^k}.
// Computed by the forward Newton recursion on the full coefficient vector.
inline std::int64_t tau_k(const WeilPolynomial& w, int k) {
    if (k < 1) throw std::invalid_argument("k must be >= 1");
    if (w.g == 0) return 0;
    auto c = w.full_coeffs();
    const int n = 2 * w.g;
    std::vector<std::int64_t> P(k + 1, 0);  // power sums of the 2g roots
    for (int m = 1; m <= k; ++m) {
        __int128 s = 0;
        for (int j = 1; j < m && j <= n; ++j) s += static_cast<__int128>(c[j]) * P[m - j];
        if (m <= n) s += static_cast<__int128>(m) * c[m];
        P[m] = static_cast<std::int64_t>(-s);
    }
    return -P[k];
}

// #A(F_q) = f(1).
inline std::int64_t num_points(const WeilPolynomial& w) {
    std::int64_t s = 0;
    for (std::int64_t c : w.full_coeffs()) s += c;
    return s;
}

// Recover a_1..a_g from N_1..N_g by Newton's identities over the integers.
// Throws when the counts are inconsistent with an integer polynomial.
inline WeilPolynomial from_counts(std::int64_t q, int g, const std::vector<std::int64_t>& counts) {
    if (g < 0) throw std::invalid_argument("negative dimension");
    if (static_cast<int>(counts.size()) < g) throw std::invalid_argument("need N_1..N_g");
    WeilPolynomial w{q, g, std::vector<std::int64_t>(g, 0)};
    std::vector<std::int64_t> P(g + 1, 0), c(g + 1, 0);
    c[0] = 1;
    std::int64_t qk = 1;
    for (int m = 1; m <= g; ++m) {
        qk *= q;
        P[m] = qk + 1 - counts[m - 1];
        __int128 s = P[m];
        for (int j = 1; j < m; ++j) s += static_cast<__int128>(c[j]) * P[m - j];
        if (s % m != 0) throw std::invalid_argument("counts are inconsistent with an integer Weil polynomial");
        c[m] = static_cast<std::int64_t>(-(s / m));
        w.a[m - 1] = c[m];
    }
    return w;
}

// Product corresponds to the product abelian variety.
inline WeilPolynomial operator*(const WeilPolynomial& x, const WeilPolynomial& y) {
    if (x.q != y.q) throw std::invalid_argument("mismatched base fields");
    if (x.g == 0) return y;
    if (y.g == 0) return x;
    auto cx = x.full_coeffs(), cy = y.full_coeffs();
    std::vector<std::int64_t> c(cx.size() + cy.size() - 1, 0);
    for (std::size_t i = 0; i < cx.size(); ++i)
        for (std::size_t j = 0; j < cy.size(); ++j) c[i + j] += cx[i] * cy[j];
    WeilPolynomial w{x.q, x.g + y.g, {}};
    w.a.assign(c.begin() + 1, c.begin() + 1 + w.g);
    return w;
}

inline std::string serialize_weil(const WeilPolynomial& w) {
    std::ostringstream os;
    os << w.q << ';' << w.g << ';';
    for (int i = 0; i < w.g; ++i) {
        if (i) os << ',';
        os << w.a[i];
    }
    return os.str();
}

// ---- dimension-2 specifics ----

// m = floor(2 sqrt q).
inline std::int64_t floor_2sqrt(std::int64_t q) { return isqrt64(4 * q); }

// Rueck inequalities: |a1| <= 2m and 2|a1|sqrt(q) - 2q <= a2 <= a1^2/4 + 2q,
// decided with exact integer arithmetic.
inline bool ruck_admissible(std::int64_t q, std::int64_t a1, std::int64_t a2) {
    std::int64_t m = floor_2sqrt(q);
    std::int64_t abs1 = a1 < 0 ? -a1 : a1;
    if (abs1 > 2 * m) return false;
    if (4 * a2 > a1 * a1 + 8 * q) return false;
    // 2|a1| sqrt q <= a2 + 2q
    std::int64_t rhs = a2 + 2 * q;
    if (rhs < 0) return false;
    return static_cast<__int128>(4) * a1 * a1 * q <= static_cast<__int128>(rhs) * rhs;
}

// Real root data x_{1,2} = (a1 +- sqrt(disc))/2 with disc = a1^2 - 4(a2 - 2q),
// kept exact via (a1, a2, disc).
struct SurfaceType {
    std::int64_t a1 = 0, a2 = 0;
    std::int64_t disc = 0;  // a1^2 - 4(a2 - 2q)
    bool integral = false;  // disc is a perfect square
    double x1 = 0, x2 = 0;
};

inline SurfaceType surface_roots(std::int64_t q, std::int64_t a1, std::int64_t a2) {
    if (!ruck_admissible(q, a1, a2)) throw std::invalid_argument("(a1, a2) is not Rueck-admissible");
    SurfaceType t;
    t.a1 = a1;
    t.a2 = a2;
    t.disc = a1 * a1 - 4 * (a2 - 2 * q);
    std::int64_t r = isqrt64(t.disc);
    t.integral = (r * r == t.disc);
    double s = std::sqrt(static_cast<double>(t.disc));
    t.x1 = (static_cast<double>(a1) + s) / 2.0;
    t.x2 = (static_cast<double>(a1) - s) / 2.0;
    return t;
}

// All complex roots on |t| = sqrt q.  Exact for g <= 2; for larger g a
// sign-change count of the associated real polynomial on [-2 sqrt q, 2 sqrt q]
// (diagnostic only).
inline bool weil_is_valid(const WeilPolynomial& w) {
    if (num_points(w) <= 0) return false;
    if (w.g == 0) return true;
    if (w.g == 1) return w.a[0] * w.a[0] <= 4 * w.q;
    if (w.g == 2) return ruck_admissible(w.q, w.a[0], w.a[1]);
    // real Weil polynomial h(u) = u^g + e_1 u^{g-1} + ... with
    // a_k = sum_i binom(g-k+2i, i) q^i e_{k-2i}
    const int g = w.g;
    std::vector<std::int64_t> e(g + 1, 0);
    e[0] = 1;
    auto binom = [](std::int64_t n, std::int64_t r) {
        if (r < 0 || r > n) return static_cast<std::int64_t>(0);
        __int128 v = 1;
        for (std::int64_t i = 0; i < r; ++i) v = v * (n - i) / (i + 1);
        return static_cast<std::int64_t>(v);
    };
    for (int kk = 1; kk <= g; ++kk) {
        __int128 s = w.a[kk - 1];
        std::int64_t qi = 1;
        for (int i = 1; 2 * i <= kk; ++i) {
            qi *= w.q;
            s -= static_cast<__int128>(binom(g - kk + 2 * i, i)) * qi * e[kk - 2 * i];
        }
        e[kk] = static_cast<std::int64_t>(s);
    }
    // Sign changes of h at rational points n/D across [-2 sqrt q, 2 sqrt q],
    // exact arithmetic throughout: sign(h(n/D)) = sign(sum e_i n^{g-i} D^i).
    // Repeated roots can undercount, so this stays a diagnostic for g > 2,
    // and the exact evaluation is kept within __int128 only up to g = 8.
    if (g > 8) return true;
    const std::int64_t D = 64;
    const std::int64_t N = isqrt64(4 * w.q * D * D);  // largest n with (n/D)^2 <= 4q
    auto sign_at = [&](std::int64_t n) {
        __int128 v = 0;
        for (int i = 0; i <= g; ++i) v = v * n + static_cast<__int128>(e[i]) * ipow(D, i);
        return (v > 0) - (v < 0);
    };
    int changes = 0, prev = 0;
    for (std::int64_t n = -N; n <= N; ++n) {
        int s = sign_at(n);
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++changes;
        prev = s;
    }
    return changes == g;
}

}  // namespace prym
