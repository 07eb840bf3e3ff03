#include <catch2/catch.hpp>

#include <set>

#include "prym/field.hpp"

using namespace prym;

TEST_CASE("prime power validation") {
    REQUIRE(PrimePower::make(3, 1).q == 3);
    REQUIRE(PrimePower::make(3, 7).q == 2187);
    REQUIRE_THROWS_AS(PrimePower::make(2, 3), std::invalid_argument);
    REQUIRE_THROWS_AS(PrimePower::make(9, 1), std::invalid_argument);
    REQUIRE_THROWS_AS(PrimePower::make(4, 1), std::invalid_argument);
    REQUIRE_THROWS_AS(PrimePower::make(5, 0), std::invalid_argument);

    REQUIRE(PrimePower::parse(2187)->p == 3);
    REQUIRE(PrimePower::parse(2187)->e == 7);
    REQUIRE(PrimePower::parse(25)->p == 5);
    REQUIRE_FALSE(PrimePower::parse(8).has_value());   // even
    REQUIRE_FALSE(PrimePower::parse(45).has_value());  // not a prime power
    REQUIRE_FALSE(PrimePower::parse(1).has_value());
}

TEST_CASE("make_field basics") {
    auto f3 = make_field(3, 1, 1);
    REQUIRE(f3->size() == 3);
    auto f9 = make_field(3, 1, 2);
    REQUIRE(f9->size() == 9);
    REQUIRE(f9->modulus() == std::vector<std::int32_t>{1, 0, 1});  // x^2 + 1 is lex-least over F_3
    auto f25 = make_field(5, 1, 2);
    REQUIRE(f25->size() == 25);
    int squares = 0;
    for (std::uint32_t a = 1; a < f25->size(); ++a)
        if (f25->chi(a) == 1) ++squares;
    REQUIRE(squares == 12);

    REQUIRE_THROWS_AS(make_field(3, 1, 20), std::invalid_argument);  // ceiling
    // registry returns the same instance
    REQUIRE(make_field(3, 1, 2).get() == f9.get());
}

TEST_CASE("quadratic character values") {
    auto f3 = make_field(3, 1, 1);
    REQUIRE(f3->chi(0) == 0);
    REQUIRE(f3->chi(1) == 1);
    REQUIRE(f3->chi(2) == -1);
    FieldElement two{f3.get(), 2};
    REQUIRE(quadratic_character(two) == -1);
}

TEST_CASE("character is multiplicative and balanced (exhaustive Q <= 81)") {
    for (auto [p, e, k] : {std::tuple{3, 1, 1}, {3, 1, 2}, {3, 1, 3}, {3, 1, 4}, {5, 1, 1}, {5, 1, 2}, {7, 1, 2},
                           {3, 2, 2}, {13, 1, 1}}) {
        auto f = make_field(p, e, k);
        std::int64_t total = 0;
        for (std::uint32_t a = 0; a < f->size(); ++a) {
            total += f->chi(a);
            REQUIRE(f->chi(a) == f->chi_by_pow(a));
            for (std::uint32_t b = 0; b < f->size(); ++b)
                REQUIRE(f->chi(f->mul(a, b)) == f->chi(a) * f->chi(b));
        }
        REQUIRE(total == 0);
    }
}

TEST_CASE("field arithmetic identities") {
    for (auto [p, e, k] : {std::tuple{3, 1, 2}, {3, 1, 3}, {5, 1, 2}, {3, 2, 2}}) {
        auto f = make_field(p, e, k);
        int fixed = 0;
        for (std::uint32_t a = 0; a < f->size(); ++a) {
            REQUIRE(f->add(a, f->neg(a)) == 0);
            if (a != 0) REQUIRE(f->mul(a, f->inv(a)) == 1);
            std::uint32_t frob = f->pow(a, f->p());
            if (frob == a) ++fixed;
        }
        REQUIRE(fixed == f->p());  // Frobenius fixes exactly F_p
        // Frobenius permutes the field
        std::set<std::uint32_t> image;
        for (std::uint32_t a = 0; a < f->size(); ++a) image.insert(f->pow(a, f->p()));
        REQUIRE(image.size() == static_cast<std::size_t>(f->size()));
    }
}

TEST_CASE("element enumeration") {
    auto f27 = make_field(3, 1, 3);
    auto elems = enumerate_elements(*f27);
    REQUIRE(elems.size() == 27);
    int squares = 0;
    for (const auto& e : elems)
        if (quadratic_character(e) == 1) ++squares;
    REQUIRE(squares == 13);
    REQUIRE(enumerate_elements(*make_field(3, 1, 1)).size() == 3);
    REQUIRE(enumerate_elements(*make_field(3, 1, 2)).size() == 9);
}

TEST_CASE("embedding commutes with arithmetic and the character") {
    // F_q -> F_{q^k} for q = 9, 27, 25
    for (auto [p, e, k] : {std::tuple{3, 2, 2}, {3, 3, 2}, {5, 2, 2}, {3, 1, 2}}) {
        auto big = make_field(p, e, k);
        auto small = make_field(p, e, 1);
        for (std::uint32_t a = 0; a < small->size(); ++a) {
            for (std::uint32_t b = 0; b < small->size(); ++b) {
                REQUIRE(big->embed_base(small->add(a, b)) == big->add(big->embed_base(a), big->embed_base(b)));
                REQUIRE(big->embed_base(small->mul(a, b)) == big->mul(big->embed_base(a), big->embed_base(b)));
            }
            // a is a square upstairs iff chi_q(a) = 1 or k is even
            if (a != 0) {
                bool square_up = big->chi(big->embed_base(a)) == 1;
                bool expected = small->chi(a) == 1 || k % 2 == 0;
                REQUIRE(square_up == expected);
            }
        }
    }
}

TEST_CASE("modulus is deterministic and irreducible by construction") {
    auto f1 = Field(PrimePower::make(3, 1), 3);
    auto f2 = Field(PrimePower::make(3, 1), 3);
    REQUIRE(f1.modulus() == f2.modulus());
    // x^(p^d) == x must hold in the quotient: Frobenius iterated d times fixes x
    auto f = make_field(3, 1, 3);
    std::uint32_t x = 3;  // the class of x has digits (0,1,0)
    std::uint32_t fr = x;
    for (int i = 0; i < 3; ++i) fr = f->pow(fr, 3);
    REQUIRE(fr == x);
}
