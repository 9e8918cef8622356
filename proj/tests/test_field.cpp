#include <vector>

#include "doctest.h"
#include "qmatrank/field.hpp"

using qmr::Field;

TEST_CASE("field axioms hold exhaustively for small q") {
    for (long long q : {2, 3, 4, 5, 7, 8, 9, 11, 13, 16}) {
        CAPTURE(q);
        Field f = Field::make(q);
        REQUIRE(f.q() == q);
        for (long long a = 0; a < q; ++a) {
            CHECK(f.add(a, 0) == a);
            CHECK(f.mul(a, 1) == a);
            CHECK(f.mul(a, 0) == 0);
            CHECK(f.add(a, f.neg(a)) == 0);
            if (a != 0) CHECK(f.mul(a, f.inv(a)) == 1);
            for (long long b = 0; b < q; ++b) {
                CHECK(f.add(a, b) == f.add(b, a));
                CHECK(f.mul(a, b) == f.mul(b, a));
                CHECK(f.sub(a, b) == f.add(a, f.neg(b)));
                for (long long c = 0; c < q; ++c) {
                    CHECK(f.add(f.add(a, b), c) == f.add(a, f.add(b, c)));
                    CHECK(f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c)));
                    CHECK(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
                }
            }
        }
    }
}

TEST_CASE("prime fields are integers mod p") {
    Field f = Field::make(7);
    for (long long a = 0; a < 7; ++a)
        for (long long b = 0; b < 7; ++b) {
            CHECK(f.add(a, b) == (a + b) % 7);
            CHECK(f.mul(a, b) == (a * b) % 7);
        }
}

TEST_CASE("extension fields use the documented moduli") {
    // modulus()[i] = coefficient of x^i, monic
    CHECK(Field::make(4).modulus() == std::vector<int>{1, 1, 1});      // x^2+x+1
    CHECK(Field::make(8).modulus() == std::vector<int>{1, 1, 0, 1});   // x^3+x+1
    CHECK(Field::make(9).modulus() == std::vector<int>{1, 0, 1});      // x^2+1
    CHECK(Field::make(16).modulus() == std::vector<int>{1, 1, 0, 0, 1});  // x^4+x+1
}

TEST_CASE("construction is deterministic") {
    for (long long q : {4, 8, 9, 16, 25, 27}) {
        Field a = Field::make(q);
        Field b = Field::make(q);
        CHECK(a.modulus() == b.modulus());
        for (long long x = 0; x < q; ++x)
            for (long long y = 0; y < q; ++y) CHECK(a.mul(x, y) == b.mul(x, y));
    }
}

TEST_CASE("GF(9) sanity: characteristic 3, x^2 = -1") {
    Field f = Field::make(9);
    CHECK(f.p() == 3);
    CHECK(f.k() == 2);
    // element x has index p = 3; with modulus x^2+1 its square is -1 = 2
    CHECK(f.mul(3, 3) == f.neg(1));
    // 1 + 1 + 1 = 0
    CHECK(f.add(1, f.add(1, 1)) == 0);
}

TEST_CASE("frobenius is additive and x^q = x") {
    for (long long q : {4, 8, 9, 16, 25}) {
        CAPTURE(q);
        Field f = Field::make(q);
        long long p = f.p();
        for (long long a = 0; a < q; ++a) {
            CHECK(f.pow(a, q) == a);
            for (long long b = 0; b < q; ++b)
                CHECK(f.pow(f.add(a, b), p) == f.add(f.pow(a, p), f.pow(b, p)));
        }
    }
}

TEST_CASE("pow matches repeated multiplication") {
    Field f = Field::make(16);
    for (long long a = 0; a < 16; ++a) {
        long long acc = 1;
        for (int e = 0; e <= 20; ++e) {
            CHECK(f.pow(a, e) == acc);
            acc = f.mul(acc, a);
        }
    }
}

TEST_CASE("multiplicative group has order q - 1") {
    for (long long q : {5, 8, 9, 16}) {
        Field f = Field::make(q);
        for (long long a = 1; a < q; ++a) CHECK(f.pow(a, q - 1) == 1);
    }
}

TEST_CASE("large q beyond the table limit still works") {
    Field f = Field::make(2048);  // 2^11, above table_limit
    CHECK(!f.has_tables());
    CHECK(f.p() == 2);
    CHECK(f.k() == 11);
    long long a = 1234, b = 567;
    long long ab = f.mul(a, b);
    CHECK(f.mul(ab, f.inv(b)) == a);
    CHECK(f.pow(a, 2047) == 1);
    CHECK(f.add(a, a) == 0);  // characteristic 2
}

TEST_CASE("tables agree with generic arithmetic") {
    Field f = Field::make(27);
    REQUIRE(f.has_tables());
    const auto* add = f.add_table();
    const auto* mul = f.mul_table();
    for (long long a = 0; a < 27; ++a)
        for (long long b = 0; b < 27; ++b) {
            CHECK(add[a * 27 + b] == f.add(a, b));
            CHECK(mul[a * 27 + b] == f.mul(a, b));
        }
}

TEST_CASE("make rejects non prime powers") {
    CHECK_THROWS_AS(Field::make(0), std::invalid_argument);
    CHECK_THROWS_AS(Field::make(1), std::invalid_argument);
    CHECK_THROWS_AS(Field::make(6), std::invalid_argument);
    CHECK_THROWS_AS(Field::make(12), std::invalid_argument);
    CHECK_THROWS_AS(Field::make(100), std::invalid_argument);
}
