#include <catch2/catch.hpp>

#include <cmath>

#include "prym/bounds.hpp"
#include "prym/weil.hpp"

using namespace prym;

TEST_CASE("weil interval") {
    auto [l1, h1] = weil_interval(9, 1);
    REQUIRE(l1 == Approx(4.0));
    REQUIRE(h1 == Approx(16.0));
    auto [l2, h2] = weil_interval(3, 2);
    REQUIRE(l2 == Approx(28 - 16 * std::sqrt(3.0)).epsilon(1e-12));  // 0.2871870...
    REQUIRE(h2 == Approx(28 + 16 * std::sqrt(3.0)).epsilon(1e-12));  // 55.7128129...
    REQUIRE(l2 * h2 == Approx(16.0).epsilon(1e-12));
    auto [l3, h3] = weil_interval(9, 2);
    REQUIRE(l3 == Approx(16.0));
    REQUIRE(h3 == Approx(256.0));
}

TEST_CASE("upper bound M") {
    REQUIRE(upper_M(9, 2, 0.0) == Approx(100.0));
    REQUIRE(upper_M(3, 2, 3.0) == Approx(30.25));
    for (auto [q, g] : {std::pair<std::int64_t, int>{3, 1}, {5, 2}, {9, 3}}) {
        double w = weil_window(q, g);
        REQUIRE(upper_M(q, g, w) == Approx(weil_interval(q, g).second).epsilon(1e-9));
        REQUIRE_THROWS_AS(upper_M(q, g, w + 1.0), std::domain_error);
    }
}

TEST_CASE("lower bound m") {
    REQUIRE(lower_m(9, 1, std::int64_t{-6}) == Approx(4.0));
    REQUIRE(lower_m(9, 2, std::int64_t{0}) == Approx(64.0));
    for (auto [q, g] : {std::pair<std::int64_t, int>{3, 1}, {5, 2}, {9, 3}, {7, 5}}) {
        double w = weil_window(q, g);
        REQUIRE(lower_m(q, g, -w) == Approx(weil_interval(q, g).first).epsilon(1e-9));
        REQUIRE(upper_M(q, g, w) == Approx(weil_interval(q, g).second).epsilon(1e-9));
    }
}

TEST_CASE("exact floors at square-q breakpoints") {
    using detail::floor_div_2sqrt;
    REQUIRE(floor_div_2sqrt(9, -6) == -1);
    REQUIRE(floor_div_2sqrt(9, -7) == -2);
    REQUIRE(floor_div_2sqrt(9, 6) == 1);
    REQUIRE(floor_div_2sqrt(9, 5) == 0);
    REQUIRE(floor_div_2sqrt(9, 0) == 0);
    REQUIRE(floor_div_2sqrt(3, 3) == 0);   // 2 sqrt 3 = 3.46
    REQUIRE(floor_div_2sqrt(3, 4) == 1);
    REQUIRE(floor_div_2sqrt(3, -4) == -2);
}

TEST_CASE("m is monotone and continuous at the parity breakpoints") {
    for (auto [q, g] : {std::pair<std::int64_t, int>{3, 2}, {5, 3}, {9, 2}, {7, 5}}) {
        double w = weil_window(q, g);
        double prev = -1e300;
        for (int i = 0; i <= 1000; ++i) {
            double tau = -w + 2 * w * i / 1000.0;
            double v = lower_m(q, g, tau);
            REQUIRE(v >= prev - 1e-9 * std::max(1.0, std::abs(v)));
            prev = v;
        }
        // proof-identity oracle at the breakpoints 2 sqrt(q) (k + 2)
        double sq = std::sqrt(static_cast<double>(q));
        for (int k = -g; k <= g - 2; k += 2) {
            double tb = 2 * sq * (k + 2);
            double limit_from_left = lower_m_with_floor(q, g, tb, k + 1);
            double at_point = lower_m_with_floor(q, g, tb, k + 2);
            REQUIRE(limit_from_left == Approx(at_point).epsilon(1e-9));
            for (double alpha : {0.25, 1.0, 1.75}) {
                double tau = 2 * sq * (k + alpha);
                double lhs = lower_m(q, g, tau);
                double rhs = (q + 1 + 2 * sq * (alpha - 1)) / (q + 1 + 2 * sq) * at_point;
                REQUIRE(lhs == Approx(rhs).epsilon(1e-9));
            }
        }
    }
}

TEST_CASE("perret bounds") {
    REQUIRE(perret_upper(3, 1, 4, 8) == Approx(8.0));           // printed formula
    REQUIRE_FALSE(perret_window_ok(3, 1, 4, 8));                // but outside the trace window
    REQUIRE(perret_window_ok(3, 1, 4, 7));
    // definitional identity against M
    for (int i = 0; i < 100; ++i) {
        std::int64_t q = (i % 2) ? 5 : 9;
        int g = 1 + i % 3;
        std::int64_t nx = 1 + (i * 7) % 20;
        std::int64_t tau = (i % (2 * g + 1)) - g;  // small, inside the window
        REQUIRE(perret_upper(q, g, nx, nx + tau) == Approx(upper_M(q, g, static_cast<double>(tau))));
    }
    REQUIRE(perret_lower(9, 2, 0) == Approx(64.0));  // delta = 0
    REQUIRE(perret_lower(9, 1, 0) == Approx(2.0));   // delta = 1
    REQUIRE(perret_delta(9, 2, 0) == 0);
    REQUIRE(perret_delta(9, 1, 0) == 1);
    REQUIRE(perret_delta(9, 2, 12) == 0);   // 12/(2*3) + 2 = 4
    REQUIRE(perret_delta(9, 2, 6) == 1);    // 1 + 2 = 3
    REQUIRE(perret_delta(3, 2, 0) == 0);
    REQUIRE(perret_delta(3, 1, 0) == 1);
    REQUIRE(perret_delta(3, 2, 1) == 1);    // irrational ratio
}

TEST_CASE("m dominates the perret lower bound") {
    for (auto [q, g] : {std::pair<std::int64_t, int>{3, 1}, {3, 2}, {5, 2}, {7, 3}, {9, 2}, {9, 5}}) {
        double w = weil_window(q, g);
        for (int i = 0; i <= 1000; ++i) {
            double tau = -w + 2 * w * i / 1000.0;
            REQUIRE(lower_m(q, g, tau) >= perret_lower_real(q, g, tau) - 1e-9);
        }
        for (std::int64_t t = -static_cast<std::int64_t>(w); t <= static_cast<std::int64_t>(w); ++t)
            REQUIRE(lower_m(q, g, t) >= perret_lower(q, g, t) - 1e-9);
    }
}

TEST_CASE("trace window from N(X)") {
    auto w0 = trace_window_34(3, 1, 0);
    REQUIRE(w0.lo == 0.0);
    REQUIRE(w0.hi == 0.0);
    auto w4 = trace_window_34(3, 1, 4);
    REQUIRE(w4.hi == Approx(2 * std::sqrt(3.0)));  // Weil window binds
    auto wbig = trace_window_34(3, 2, 1000);
    REQUIRE(wbig.hi == Approx(4 * std::sqrt(3.0)));
    REQUIRE_THROWS_AS(trace_window_34(3, 1, -1), std::invalid_argument);
}

TEST_CASE("phi bound") {
    REQUIRE(*phi_bound(3, 1, 4) == Approx(std::sqrt(20.0)));
    // maximized over integers at N(X) = q - g
    for (auto [q, g] : {std::pair<std::int64_t, int>{3, 1}, {5, 2}, {9, 2}}) {
        double best = *phi_bound(q, g, q - g);
        for (std::int64_t nx = 0; nx <= q + 20; ++nx) {
            auto v = phi_bound(q, g, nx);
            if (v) REQUIRE(*v <= best + 1e-9);
        }
    }
    // far out the radicand goes negative
    REQUIRE_FALSE(phi_bound(3, 1, 100).has_value());
}

TEST_CASE("proposition 38 window") {
    auto p = prop38_window(3, 3);
    REQUIRE(p.bound == Approx(3.0 / 7.0 * std::sqrt(448.0)));
    REQUIRE(p.sharper_than_weil);
    REQUIRE(p.bound < weil_window(3, 3));
    REQUIRE_FALSE(prop38_window(9, 1).sharper_than_weil);
    // the bound is a root of -(2g+1) t^2 - 2g(g-q) t + g^2 (4gq + q^2 + 6q + 1)
    for (auto [q, g] : {std::pair<std::int64_t, int>{3, 3}, {5, 5}, {9, 5}, {3, 1}}) {
        double t = prop38_window(q, g).bound;
        double res = -(2.0 * g + 1) * t * t - 2.0 * g * (g - q) * t +
                     static_cast<double>(g) * g * (4.0 * g * q + static_cast<double>(q) * q + 6.0 * q + 1);
        REQUIRE(std::abs(res) < 1e-9 * std::max(1.0, std::abs(static_cast<double>(g) * g * q * q)));
    }
}

TEST_CASE("theorem 39 interval") {
    REQUIRE_FALSE(theorem39_interval(9, 2).has_value());
    auto iv = theorem39_interval(3, 3);
    REQUIRE(iv.has_value());
    double psi = prop38_window(3, 3).bound;
    REQUIRE(iv->first == Approx(lower_m(3, 3, -psi)));
    REQUIRE(iv->second == Approx(upper_M(3, 3, psi)));
    auto [wl, wh] = weil_interval(3, 3);
    REQUIRE(iv->first >= wl - 1e-9);
    REQUIRE(iv->second <= wh + 1e-9);
    // sandwich on a grid of (q, g >= q)
    for (std::int64_t q : {3, 5, 7, 9}) {
        for (int g = static_cast<int>(q); g < q + 8; ++g) {
            auto v = theorem39_interval(q, g);
            REQUIRE(v.has_value());
            auto [lo, hi] = weil_interval(q, g);
            REQUIRE(v->first >= lo - 1e-9 * std::abs(lo));
            REQUIRE(v->second <= hi + 1e-9 * std::abs(hi));
            REQUIRE(v->first <= v->second);
        }
    }
}

TEST_CASE("ihara bound") {
    REQUIRE(ihara_bound(3, 1) == Approx(7.0));  // the elliptic maximum over F_3
    double prev = 0;
    for (int G = 1; G <= 30; ++G) {
        double v = ihara_bound(3, G);
        REQUIRE(v > prev);
        prev = v;
    }
    // always above the prop38 trace bound
    for (std::int64_t q : {3, 5, 7, 9, 11, 13, 17, 19, 23, 25, 27, 29, 31, 37, 41, 43, 47, 49})
        for (int g = 1; g <= 20; ++g)
            REQUIRE(ihara_bound(q, g + 1) >= prop38_window(q, g).bound - 1e-9);
}

TEST_CASE("corollary 36 intervals") {
    auto c0 = corollary36_interval(3, 1, 0);
    REQUIRE(c0.from_nx.first == Approx(lower_m(3, 1, std::int64_t{0})));
    REQUIRE(c0.from_nx.second == Approx(upper_M(3, 1, 0.0)));
    auto c = corollary36_interval(3, 2, 4);
    auto [wl, wh] = weil_interval(3, 2);
    REQUIRE(c.from_nx.first >= wl - 1e-9);
    REQUIRE(c.from_nx.second <= wh + 1e-9);
    REQUIRE(c.from_phi.has_value());
    // clamping: a huge N(X) falls back to the Weil interval
    auto chuge = corollary36_interval(3, 2, 100000);
    REQUIRE(chuge.from_nx.first == Approx(wl));
    REQUIRE(chuge.from_nx.second == Approx(wh));
}

TEST_CASE("m/M sandwich every admissible surface") {
    // every Rueck-admissible (a1, a2) obeys m(a1) <= q^2+1+(q+1)a1+a2 <= M(a1)
    for (std::int64_t q : {3, 5, 7, 9}) {
        std::int64_t m2 = isqrt64(4 * q);
        for (std::int64_t a1 = -2 * m2; a1 <= 2 * m2; ++a1) {
            for (std::int64_t a2 = -2 * q; a2 <= (a1 * a1 + 8 * q) / 4; ++a2) {
                if (!ruck_admissible(q, a1, a2)) continue;
                double n = static_cast<double>(q * q + 1 + (q + 1) * a1 + a2);
                REQUIRE(n >= lower_m(q, 2, a1) - 1e-9);
                REQUIRE(n <= upper_M(q, 2, static_cast<double>(a1)) + 1e-9);
            }
        }
    }
}

TEST_CASE("bound report") {
    auto rep = make_bound_report(9, 2, 0, 100);
    bool saw_m100 = false;
    for (const auto& e : rep.entries)
        if (e.name == "M" && e.value == Approx(100.0)) saw_m100 = true;
    REQUIRE(saw_m100);
    // thm39 applicable iff g >= q
    auto rep39 = make_bound_report(3, 3, std::nullopt, std::nullopt);
    bool t39_ok = false;
    for (const auto& e : rep39.entries)
        if (e.name == "thm39" && e.applicable) t39_ok = true;
    REQUIRE(t39_ok);
    // json round trip is byte-identical
    auto j = rep.to_json();
    REQUIRE(nlohmann::json::parse(j.dump()).dump() == j.dump());
}
