#include <catch2/catch.hpp>

#include "prym/extremal.hpp"

using namespace prym;

TEST_CASE("sqrt classification") {
    auto s3 = sqrt_class(PrimePower::make(3, 1));
    REQUIRE(s3.m == 3);
    REQUIRE_FALSE(s3.is_square);
    REQUIRE_FALSE(s3.frac_ge_golden);  // {2 sqrt 3} = 0.4641
    REQUIRE(s3.frac_ge_sqrt2);
    REQUIRE_FALSE(s3.frac_ge_sqrt3);

    auto s9 = sqrt_class(PrimePower::make(3, 2));
    REQUIRE(s9.m == 6);
    REQUIRE(s9.is_square);
    REQUIRE_FALSE(s9.frac_ge_golden);
    REQUIRE_FALSE(s9.frac_ge_sqrt2);
    REQUIRE_FALSE(s9.frac_ge_sqrt3);

    auto s11 = sqrt_class(PrimePower::make(11, 1));  // {2 sqrt 11} = 0.6332
    REQUIRE(s11.m == 6);
    REQUIRE(s11.frac_ge_golden);
    REQUIRE(s11.frac_ge_sqrt2);
    REQUIRE_FALSE(s11.frac_ge_sqrt3);

    auto s2187 = sqrt_class(PrimePower::make(3, 7));  // frac = 0.5307
    REQUIRE(s2187.m == 93);
    REQUIRE_FALSE(s2187.frac_ge_golden);
    REQUIRE(s2187.frac_ge_sqrt2);
    REQUIRE_FALSE(s2187.frac_ge_sqrt3);

    auto s75 = sqrt_class(PrimePower::make(7, 5));  // q = 16807, frac = 0.2836
    REQUIRE(s75.m == 259);
    REQUIRE_FALSE(s75.frac_ge_golden);
    REQUIRE_FALSE(s75.frac_ge_sqrt2);

    auto s315 = sqrt_class(PrimePower::make(3, 15));  // q = 14348907, frac = 0.9902
    REQUIRE(s315.m == 7575);
    REQUIRE(s315.frac_ge_golden);
    REQUIRE(s315.frac_ge_sqrt2);
    REQUIRE(s315.frac_ge_sqrt3);

    // m^2 <= 4q < (m+1)^2
    for (auto pp : {PrimePower::make(3, 1), PrimePower::make(13, 1), PrimePower::make(3, 7)}) {
        auto s = sqrt_class(pp);
        REQUIRE(s.m * s.m <= 4 * pp.q);
        REQUIRE(4 * pp.q < (s.m + 1) * (s.m + 1));
    }
}

TEST_CASE("elliptic extremes") {
    auto e3 = elliptic_extremes(PrimePower::make(3, 1));
    REQUIRE(e3.max.value == 7);
    REQUIRE(e3.min.value == 1);
    auto e9 = elliptic_extremes(PrimePower::make(3, 2));
    REQUIRE(e9.max.value == 16);
    REQUIRE(e9.min.value == 4);
    auto e25 = elliptic_extremes(PrimePower::make(5, 2));
    REQUIRE(e25.max.value == 36);
    REQUIRE(e25.min.value == 16);
    auto e27 = elliptic_extremes(PrimePower::make(3, 3));  // p does not divide m = 10
    REQUIRE(e27.max.value == 38);
    REQUIRE(e27.min.value == 18);
    auto e2187 = elliptic_extremes(PrimePower::make(3, 7));  // p | m = 93, e odd > 1
    REQUIRE(e2187.max.value == 2280);
    REQUIRE(e2187.min.value == 2096);
}

TEST_CASE("prym surface extremes") {
    REQUIRE(prym_max_2(PrimePower::make(3, 1)).value == 49);
    REQUIRE(prym_min_2(PrimePower::make(3, 1)).value == 1);
    REQUIRE(prym_max_2(PrimePower::make(5, 1)).value == 100);
    REQUIRE(prym_min_2(PrimePower::make(5, 1)).value == 4);
    REQUIRE(prym_max_2(PrimePower::make(7, 1)).value == 169);
    REQUIRE(prym_min_2(PrimePower::make(7, 1)).value == 9);
    REQUIRE(prym_max_2(PrimePower::make(3, 2)).value == 256);
    REQUIRE(prym_min_2(PrimePower::make(3, 2)).value == 16);
    REQUIRE(prym_max_2(PrimePower::make(11, 1)).value == 324);
    REQUIRE(prym_min_2(PrimePower::make(11, 1)).value == 36);
    REQUIRE(prym_max_2(PrimePower::make(13, 1)).value == 441);
    REQUIRE(prym_min_2(PrimePower::make(13, 1)).value == 49);
    REQUIRE(prym_max_2(PrimePower::make(3, 5)).value == 75625);  // m = 31 coprime to 3
    REQUIRE(prym_min_2(PrimePower::make(3, 5)).value == 45369);

    // q = 2187: p | m, e odd, sqrt2 flag only -> third bullets
    auto mx = prym_max_2(PrimePower::make(3, 7));
    REQUIRE(mx.value == 5198400);  // (q + m)^2
    REQUIRE(mx.case_name == "fallback");
    auto mn = prym_min_2(PrimePower::make(3, 7));
    REQUIRE(mn.value == 4393214);  // (q + 2 - m)^2 - 2
    // q = 16807: p | m, no flags -> both final bullets
    REQUIRE(prym_max_2(PrimePower::make(7, 5)).value == 291248356);
    REQUIRE(prym_min_2(PrimePower::make(7, 5)).value == 273902500);
    // q = 3^15: golden flag set -> second bullets, exact integers b^2 - b - 1 and b'^2 + b' - 1
    REQUIRE(prym_max_2(PrimePower::make(3, 15)).value == 206108589772805);
    REQUIRE(prym_min_2(PrimePower::make(3, 15)).value == 205673846558221);

    // (q + m)^2 <= max <= (q + 1 + m)^2
    for (auto pp : {PrimePower::make(3, 1), PrimePower::make(3, 7), PrimePower::make(7, 5), PrimePower::make(3, 15)}) {
        std::int64_t m = sqrt_class(pp).m;
        std::int64_t v = prym_max_2(pp).value;
        REQUIRE((pp.q + m) * (pp.q + m) <= v);
        REQUIRE(v <= (pp.q + 1 + m) * (pp.q + 1 + m));
    }
}

TEST_CASE("maximizing table") {
    auto pp7 = PrimePower::make(7, 1);  // m = 5, b = 13
    auto rows = table_max(pp7);
    REQUIRE(rows.size() == 7);
    std::vector<std::int64_t> counts;
    for (const auto& r : rows) counts.push_back(r.count);
    REQUIRE(counts == std::vector<std::int64_t>{169, 156, 155, 144, 143, 142, 141});
    REQUIRE(rows[0].a1 == 10);
    REQUIRE(rows[0].a2 == 39);
    REQUIRE(rows[0].type == "[5,5]");
    REQUIRE(rows[0].formula == "b^2");
    REQUIRE(rows[1].a1 == 9);
    REQUIRE(rows[1].a2 == 34);
    REQUIRE(rows[1].formula == "b(b-1)");
    REQUIRE(rows[2].formula == "b^2-b-1");
    REQUIRE_FALSE(rows[2].exists);  // {2 sqrt 7} = 0.2915 < 0.618
    REQUIRE_FALSE(rows[5].exists);
    REQUIRE_FALSE(rows[6].exists);
    // q = 3 headline row
    auto rows3 = table_max(PrimePower::make(3, 1));
    REQUIRE(rows3[0].a1 == 6);
    REQUIRE(rows3[0].a2 == 15);
    REQUIRE(rows3[0].type == "[3,3]");
    REQUIRE(rows3[0].count == 49);
    // strict decrease down the table
    for (auto pp : {PrimePower::make(7, 1), PrimePower::make(3, 2), PrimePower::make(11, 1), PrimePower::make(13, 1)}) {
        auto rs = table_max(pp);
        for (std::size_t i = 0; i + 1 < rs.size(); ++i) REQUIRE(rs[i].count > rs[i + 1].count);
        for (const auto& r : rs)
            if (r.exists) REQUIRE(ruck_admissible(pp.q, r.a1, r.a2));
    }
}

TEST_CASE("minimizing table") {
    REQUIRE_THROWS_AS(table_min(PrimePower::make(3, 1)), std::invalid_argument);
    REQUIRE_THROWS_AS(table_min(PrimePower::make(5, 1)), std::invalid_argument);
    auto rows = table_min(PrimePower::make(3, 2));  // q = 9, m = 6, b' = 4
    REQUIRE(rows.size() == 7);
    REQUIRE(rows[0].a1 == -12);
    REQUIRE(rows[0].a2 == 54);
    REQUIRE(rows[0].type == "[-6,-6]");
    REQUIRE(rows[0].count == 16);
    std::vector<std::int64_t> counts;
    for (const auto& r : rows) counts.push_back(r.count);
    REQUIRE(counts == std::vector<std::int64_t>{16, 19, 20, 22, 23, 24, 25});
    for (auto pp : {PrimePower::make(7, 1), PrimePower::make(3, 2), PrimePower::make(11, 1), PrimePower::make(13, 1)}) {
        auto rs = table_min(pp);
        for (std::size_t i = 0; i + 1 < rs.size(); ++i) REQUIRE(rs[i].count < rs[i + 1].count);
        for (const auto& r : rs)
            if (r.exists) REQUIRE(ruck_admissible(pp.q, r.a1, r.a2));
    }
    // q = 11 has the golden and sqrt2 types but not sqrt3
    auto r11 = table_min(PrimePower::make(11, 1));
    REQUIRE(r11[1].exists);        // golden
    REQUIRE(r11[4].exists);        // sqrt2
    REQUIRE_FALSE(r11[3].exists);  // sqrt3
}

TEST_CASE("extremes replay the table case analysis") {
    // the selected theorem bullet always lands on a table row of the same count
    for (auto pp : {PrimePower::make(3, 1), PrimePower::make(5, 1), PrimePower::make(7, 1), PrimePower::make(3, 2),
                    PrimePower::make(11, 1), PrimePower::make(13, 1), PrimePower::make(3, 3), PrimePower::make(5, 2),
                    PrimePower::make(3, 7), PrimePower::make(7, 5)}) {
        auto mx = prym_max_2(pp);
        bool found = false;
        for (const auto& r : table_max(pp))
            if (r.count == mx.value && r.exists) found = true;
        REQUIRE(found);
        if (pp.q > 5) {
            auto mn = prym_min_2(pp);
            bool foundm = false;
            for (const auto& r : table_min(pp))
                if (r.count == mn.value && r.exists) foundm = true;
            REQUIRE(foundm);
        }
    }
}

TEST_CASE("tables csv") {
    auto csv = tables_csv(table_max(PrimePower::make(3, 1)));
    REQUIRE(csv.find("a1,a2,type,count,exists,prym_realizable_note") == 0);
    REQUIRE(csv.find("6,15,\"[3,3]\",49,true") != std::string::npos);
}
