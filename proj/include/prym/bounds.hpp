#pragma once

// Closed-form bounds on #A(F_q) and on the Prym trace.  Values are doubles;
// every discrete decision (floors of tau/(2 sqrt q), the delta parity, sign
// tests, applicability thresholds) is made with exact integer arithmetic.

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "field.hpp"
#include "json.hpp"

namespace prym {

inline double weil_window(std::int64_t q, int g) { return 2.0 * g * std::sqrt(static_cast<double>(q)); }

inline std::pair<double, double> weil_interval(std::int64_t q, int g) {
    double s = std::sqrt(static_cast<double>(q));
    return {std::pow(q + 1 - 2 * s, g), std::pow(q + 1 + 2 * s, g)};
}

namespace detail {

inline void check_window(std::int64_t q, int g, double tau) {
    if (std::abs(tau) > weil_window(q, g) + 1e-9) throw std::domain_error("tau outside the Weil window");
}

// sign of (c * sqrt(q) - t) for integers c, t: exact.
inline int cmp_mul_sqrt(std::int64_t c, std::int64_t q, std::int64_t t) {
    if (c >= 0 && t < 0) return 1;
    if (c <= 0 && t > 0) return -1;
    __int128 lhs = static_cast<__int128>(c) * c * q;
    __int128 rhs = static_cast<__int128>(t) * t;
    int mag = (lhs > rhs) - (lhs < rhs);
    if (c >= 0 && t >= 0) return mag;
    return -mag;  // both nonpositive
}

// floor(t / (2 sqrt q)) for integer t, exact: the unique n with
// 2 n sqrt q <= t < 2 (n+1) sqrt q.
inline std::int64_t floor_div_2sqrt(std::int64_t q, std::int64_t t) {
    std::int64_t n = static_cast<std::int64_t>(std::floor(static_cast<double>(t) / (2.0 * std::sqrt(static_cast<double>(q)))));
    for (std::int64_t cand = n - 2; cand <= n + 2; ++cand) {
        if (cmp_mul_sqrt(2 * cand, q, t) <= 0 && cmp_mul_sqrt(2 * (cand + 1), q, t) > 0) return cand;
    }
    throw std::logic_error("floor_div_2sqrt bracket failure");
}

inline std::int64_t exact_sqrt(std::int64_t q) {  // -1 when q is not a perfect square
    std::int64_t s = isqrt64(q);
    return s * s == q ? s : -1;
}

}  // namespace detail

// M(tau) = (q + 1 + tau/g)^g.
inline double upper_M(std::int64_t q, int g, double tau) {
    detail::check_window(q, g, tau);
    return std::pow(q + 1 + tau / g, g);
}

struct RS {
    std::int64_t r = 0, s = 0;
};

inline RS rs_of(int g, std::int64_t floor_tau) {
    auto fdiv = [](std::int64_t a, std::int64_t b) {
        std::int64_t r = a / b;
        if ((a % b != 0) && ((a < 0) != (b < 0))) --r;
        return r;
    };
    return RS{fdiv(g + floor_tau, 2), fdiv(g - 1 - floor_tau, 2)};
}

// m(tau) = (q+1+tau-2(r-s) sqrt q)(q+1+2 sqrt q)^r (q+1-2 sqrt q)^s.
inline double lower_m_with_floor(std::int64_t q, int g, double tau, std::int64_t floor_tau) {
    detail::check_window(q, g, tau);
    RS rs = rs_of(g, floor_tau);
    double sq = std::sqrt(static_cast<double>(q));
    return (q + 1 + tau - 2.0 * (rs.r - rs.s) * sq) * std::pow(q + 1 + 2 * sq, static_cast<double>(rs.r)) *
           std::pow(q + 1 - 2 * sq, static_cast<double>(rs.s));
}

inline double lower_m(std::int64_t q, int g, double tau) {
    std::int64_t fl = static_cast<std::int64_t>(std::floor(tau / (2.0 * std::sqrt(static_cast<double>(q)))));
    return lower_m_with_floor(q, g, tau, fl);
}

// Integer-tau overload with the exact breakpoint floor.
inline double lower_m(std::int64_t q, int g, std::int64_t tau) {
    return lower_m_with_floor(q, g, static_cast<double>(tau), detail::floor_div_2sqrt(q, tau));
}

// Perret upper bound (q+1+(N(Y)-N(X))/g)^g, evaluated as printed; the window
// test is reported separately rather than thrown.
inline double perret_upper(std::int64_t q, int g, std::int64_t nx, std::int64_t ny) {
    return std::pow(q + 1 + static_cast<double>(ny - nx) / g, g);
}

inline bool perret_window_ok(std::int64_t q, int g, std::int64_t nx, std::int64_t ny) {
    std::int64_t t = ny - nx;
    return static_cast<__int128>(t) * t <= static_cast<__int128>(4) * g * g * q;
}

// delta = 0 iff tau/(2 sqrt q) + g is an even integer (exact test).
inline int perret_delta(std::int64_t q, int g, std::int64_t tau) {
    std::int64_t s = detail::exact_sqrt(q);
    std::int64_t n;
    if (s < 0) {
        if (tau != 0) return 1;
        n = 0;
    } else {
        if (tau % (2 * s) != 0) return 1;
        n = tau / (2 * s);
    }
    return ((n + g) % 2 == 0) ? 0 : 1;
}

inline double perret_lower_value(std::int64_t q, int g, double tau, int delta) {
    double sq = std::sqrt(static_cast<double>(q));
    double ratio = (sq + 1) / (sq - 1);
    return std::pow(ratio, tau / (2 * sq) - 2.0 * delta) * std::pow(static_cast<double>(q - 1), g);
}

inline double perret_lower(std::int64_t q, int g, std::int64_t tau) {
    return perret_lower_value(q, g, static_cast<double>(tau), perret_delta(q, g, tau));
}

// Real-tau variant used on grids: delta via near-integer detection.
inline double perret_lower_real(std::int64_t q, int g, double tau) {
    double x = tau / (2.0 * std::sqrt(static_cast<double>(q))) + g;
    double r = std::round(x / 2.0) * 2.0;
    int delta = std::abs(x - r) <= 1e-9 ? 0 : 1;
    return perret_lower_value(q, g, tau, delta);
}

struct TraceWindow {
    double lo = 0, hi = 0;
    std::string lo_source, hi_source;
};

// |tau(P)| <= N(X), intersected with the Weil window.
inline TraceWindow trace_window_34(std::int64_t q, int g, std::int64_t nx) {
    if (nx < 0) throw std::invalid_argument("N(X) must be nonnegative");
    double w = weil_window(q, g);
    if (static_cast<double>(nx) <= w) return {-static_cast<double>(nx), static_cast<double>(nx), "prop34", "prop34"};
    return {-w, w, "weil", "weil"};
}

// phi(N(X)) = sqrt(g(q^2-1) - g(N(X)-q-1)^2/(g+1) - 2g(N(X)-q-1) + 4g^2 q);
// nullopt when the radicand is negative (decided exactly).
inline std::optional<double> phi_bound(std::int64_t q, int g, std::int64_t nx) {
    std::int64_t t = nx - q - 1;
    // (g+1) * radicand as an exact integer
    __int128 scaled = static_cast<__int128>(g) * (static_cast<__int128>(q) * q - 1) * (g + 1) -
                      static_cast<__int128>(g) * t * t - static_cast<__int128>(2) * g * (g + 1) * t +
                      static_cast<__int128>(4) * g * g * q * (g + 1);
    if (scaled < 0) return std::nullopt;
    double radicand = static_cast<double>(scaled) / (g + 1);
    return std::sqrt(radicand);
}

struct Prop38 {
    double bound = 0;              // constrains |tau(P)| on the region |tau(P)| >= q - g
    bool sharper_than_weil = false;
};

// bound = g/(2g+1) (q - g + sqrt((q-g)^2 + (2g+1)(4gq + q^2 + 6q + 1))).
// Sharper than Weil iff g >= (q sqrt q + 3q - sqrt q + 1)/(4 sqrt q), decided
// exactly: (4g + 1 - q) sqrt q >= 3q + 1.
inline Prop38 prop38_window(std::int64_t q, int g) {
    double qg = static_cast<double>(q - g);
    double rad = qg * qg + (2.0 * g + 1) * (4.0 * g * q + static_cast<double>(q) * q + 6.0 * q + 1);
    Prop38 out;
    out.bound = g / (2.0 * g + 1) * (qg + std::sqrt(rad));
    std::int64_t c = 4 * static_cast<std::int64_t>(g) + 1 - q;
    out.sharper_than_weil = detail::cmp_mul_sqrt(c, q, 3 * q + 1) >= 0;
    return out;
}

// Theorem interval for g >= q: (m(-psi), M(psi)) with psi the prop38 bound.
inline std::optional<std::pair<double, double>> theorem39_interval(std::int64_t q, int g) {
    if (g < q) return std::nullopt;
    double psi = prop38_window(q, g).bound;
    return std::make_pair(lower_m(q, g, -psi), upper_M(q, g, psi));
}

// Ihara: max points of a curve of genus G over F_q,
// (2q - G + 2 + sqrt((8q+1) G^2 + (4q^2-4q) G)) / 2.
inline double ihara_bound(std::int64_t q, int genus_total) {
    if (genus_total < 1) throw std::invalid_argument("genus must be >= 1");
    double G = genus_total;
    return 0.5 * (2.0 * q - G + 2 + std::sqrt((8.0 * q + 1) * G * G + (4.0 * static_cast<double>(q) * q - 4.0 * q) * G));
}

struct Cor36 {
    std::pair<double, double> from_nx;                  // [m(-N(X)), M(N(X))], window-clamped
    std::optional<std::pair<double, double>> from_phi;  // same with phi(N(X))
};

inline Cor36 corollary36_interval(std::int64_t q, int g, std::int64_t nx) {
    if (nx < 0) throw std::invalid_argument("N(X) must be nonnegative");
    double w = weil_window(q, g);
    auto clamp = [&](double t) { return std::min(t, w); };
    Cor36 out;
    double t1 = clamp(static_cast<double>(nx));
    out.from_nx = {lower_m(q, g, -t1), upper_M(q, g, t1)};
    if (auto ph = phi_bound(q, g, nx)) {
        double t2 = clamp(*ph);
        out.from_phi = std::make_pair(lower_m(q, g, -t2), upper_M(q, g, t2));
    }
    return out;
}

// ---- aggregated report ----

struct BoundEntry {
    std::string name;
    std::string kind;  // "upper" or "lower"
    double value = 0;
    bool applicable = true;
    nlohmann::json inputs;
};

struct BoundReport {
    std::int64_t q = 0;
    int g = 0;
    std::optional<std::int64_t> tau;
    std::optional<std::int64_t> nx;
    std::vector<BoundEntry> entries;

    nlohmann::json to_json() const {
        nlohmann::json j;
        j["q"] = q;
        j["g"] = g;
        if (tau) j["tau"] = *tau;
        if (nx) j["nx"] = *nx;
        j["entries"] = nlohmann::json::array();
        for (const auto& e : entries)
            j["entries"].push_back({{"name", e.name},
                                    {"kind", e.kind},
                                    {"value", e.value},
                                    {"applicable", e.applicable},
                                    {"inputs", e.inputs}});
        return j;
    }
};

inline BoundReport make_bound_report(std::int64_t q, int g, std::optional<std::int64_t> tau,
                                     std::optional<std::int64_t> nx) {
    BoundReport rep{q, g, tau, nx, {}};
    auto add = [&](std::string name, std::string kind, double value, bool applicable, nlohmann::json inputs) {
        rep.entries.push_back(BoundEntry{std::move(name), std::move(kind), value, applicable, std::move(inputs)});
    };
    auto [wl, wh] = weil_interval(q, g);
    add("weil", "lower", wl, true, {});
    add("weil", "upper", wh, true, {});
    double w = weil_window(q, g);
    if (tau) {
        bool in = std::abs(static_cast<double>(*tau)) <= w + 1e-9;
        add("M", "upper", in ? upper_M(q, g, static_cast<double>(*tau)) : 0.0, in, {{"tau", *tau}});
        add("m", "lower", in ? lower_m(q, g, *tau) : 0.0, in, {{"tau", *tau}});
        add("perret-lower", "lower", perret_lower(q, g, *tau), in, {{"tau", *tau}});
        if (nx) {
            std::int64_t ny = *nx + *tau;
            add("perret-upper", "upper", perret_upper(q, g, *nx, ny), perret_window_ok(q, g, *nx, ny),
                {{"nx", *nx}, {"ny", ny}});
        }
    }
    if (nx) {
        auto tw = trace_window_34(q, g, *nx);
        add("prop34", "upper", tw.hi, true, {{"nx", *nx}, {"on", "abs(tau(P))"}});
        auto ph = phi_bound(q, g, *nx);
        add("prop35", "upper", ph.value_or(0.0), ph.has_value(), {{"nx", *nx}, {"on", "abs(tau(P))"}});
        auto c36 = corollary36_interval(q, g, *nx);
        add("cor36", "lower", c36.from_nx.first, true, {{"nx", *nx}, {"via", "m(-N(X))"}});
        add("cor36", "upper", c36.from_nx.second, true, {{"nx", *nx}, {"via", "M(N(X))"}});
        add("cor36", "lower", c36.from_phi ? c36.from_phi->first : 0.0, c36.from_phi.has_value(),
            {{"nx", *nx}, {"via", "m(-phi)"}});
        add("cor36", "upper", c36.from_phi ? c36.from_phi->second : 0.0, c36.from_phi.has_value(),
            {{"nx", *nx}, {"via", "M(phi)"}});
    }
    auto p38 = prop38_window(q, g);
    add("prop38", "upper", p38.bound, true,
        {{"on", "abs(tau(P))"}, {"region", "abs(tau(P)) >= q-g"}, {"sharper_than_weil", p38.sharper_than_weil}});
    auto t39 = theorem39_interval(q, g);
    add("thm39", "lower", t39 ? t39->first : 0.0, t39.has_value(), {{"requires", "g >= q"}});
    add("thm39", "upper", t39 ? t39->second : 0.0, t39.has_value(), {{"requires", "g >= q"}});
    add("ihara", "upper", ihara_bound(q, g + 1), true, {{"on", "N(X)"}, {"genus", g + 1}});
    return rep;
}

}  // namespace prym
