#include <random>
#include <vector>

#include "doctest.h"
#include "qmatrank/laurent.hpp"

using qmr::BigInt;
using qmr::BigRat;
using qmr::Laurent;
using qmr::Sample;
using qmr::SampleTable;

namespace {

Laurent qpow(int e) { return Laurent::monomial(1, e); }

Laurent from_coeffs(const std::vector<long long>& asc) {
    Laurent p;
    for (int e = 0; e < static_cast<int>(asc.size()); ++e)
        p += Laurent::monomial(BigInt(asc[e]), e);
    return p;
}

}  // namespace

TEST_CASE("ring operations") {
    Laurent a = from_coeffs({1, 2});       // 2q + 1
    Laurent b = from_coeffs({-1, 0, 3});   // 3q^2 - 1
    CHECK((a + b) == from_coeffs({0, 2, 3}));
    CHECK((a - b) == from_coeffs({2, 2, -3}));
    CHECK((a * b) == from_coeffs({-1, -2, 3, 6}));
    CHECK((a * Laurent{}) == Laurent{});
    CHECK((-a + a) == Laurent{});
    CHECK(a.pow(0) == Laurent(1));
    CHECK(a.pow(3) == a * a * a);
}

TEST_CASE("zero terms never linger") {
    Laurent a = from_coeffs({1, 1});
    Laurent b = from_coeffs({1, -1});
    CHECK((a + b).terms().size() == 1);  // 2
    CHECK((a - a).is_zero());
    CHECK(Laurent(0).is_zero());
    CHECK(Laurent::monomial(0, 5).is_zero());
}

TEST_CASE("laurent exponents and qinv substitution") {
    Laurent p = qpow(3) + Laurent(2) * qpow(-2);
    CHECK(!p.is_polynomial());
    CHECK(p.min_exp() == -2);
    CHECK(p.max_exp() == 3);
    CHECK(p.subst_qinv() == qpow(-3) + Laurent(2) * qpow(2));
    CHECK(p.subst_qinv().subst_qinv() == p);
    CHECK(p.shifted(2) == qpow(5) + Laurent(2));
    // q^e * q^-e = 1
    CHECK((qpow(7) * qpow(-7)) == Laurent(1));
}

TEST_CASE("bracket") {
    CHECK(Laurent::bracket(0) == Laurent{});
    CHECK(Laurent::bracket(-3) == Laurent{});
    CHECK(Laurent::bracket(1) == Laurent(1));
    CHECK(Laurent::bracket(4) == from_coeffs({1, 1, 1, 1}));
    CHECK(Laurent::bracket(5).eval(BigInt(1)) == 5);
    // [m]_q * (q-1) = q^m - 1
    Laurent qm1 = Laurent::q() - Laurent(1);
    CHECK(Laurent::bracket(6) * qm1 == qpow(6) - Laurent(1));
}

TEST_CASE("evaluation") {
    Laurent p = from_coeffs({-1, 0, 2});  // 2q^2 - 1
    CHECK(p.eval(BigInt(0)) == -1);
    CHECK(p.eval(BigInt(3)) == 17);
    CHECK(p.eval(BigInt(-2)) == 7);
    Laurent l = qpow(-1) + Laurent(1);
    BigRat at2 = l.eval_rational(BigRat(2));
    CHECK(at2 == BigRat(3, 2));
    CHECK(Laurent{}.eval(BigInt(5)) == 0);
}

TEST_CASE("factor_qminus1 pulls out the full (q-1) power") {
    Laurent qm1 = Laurent::q() - Laurent(1);

    SUBCASE("(q^2-1)(q^2-q) = (q-1)^2 * (q^2+q)") {
        Laurent p = (qpow(2) - Laurent(1)) * (qpow(2) - Laurent::q());
        auto [mult, quo] = p.factor_qminus1();
        CHECK(mult == 2);
        CHECK(quo == from_coeffs({0, 1, 1}));
        CHECK(quo * qm1.pow(2) == p);
    }
    SUBCASE("no factor") {
        Laurent p = from_coeffs({1, 1});
        auto [mult, quo] = p.factor_qminus1();
        CHECK(mult == 0);
        CHECK(quo == p);
    }
    SUBCASE("zero polynomial reports (0, 0)") {
        auto [mult, quo] = Laurent{}.factor_qminus1();
        CHECK(mult == 0);
        CHECK(quo.is_zero());
    }
    SUBCASE("pure power") {
        auto [mult, quo] = qm1.pow(5).factor_qminus1();
        CHECK(mult == 5);
        CHECK(quo == Laurent(1));
    }
}

TEST_CASE("divided_by is exact or refuses") {
    Laurent a = from_coeffs({1, 2, 1});  // (q+1)^2
    Laurent b = from_coeffs({1, 1});
    auto quo = a.divided_by(b);
    REQUIRE(quo.has_value());
    CHECK(*quo == b);
    CHECK(!from_coeffs({1, 1, 1}).divided_by(b).has_value());
    CHECK_THROWS_AS(a.divided_by(Laurent{}), std::invalid_argument);
    // laurent divisor: q^3 / q = q^2
    auto m = qpow(3).divided_by(Laurent::q());
    REQUIRE(m.has_value());
    CHECK(*m == qpow(2));
}

TEST_CASE("t basis") {
    // 14q^2 - 4q + 2 = 14t^2 + 24t + 12 at t = q-1
    Laurent p = from_coeffs({2, -4, 14});
    CHECK(p.in_t_basis() == std::vector<BigInt>{BigInt(12), BigInt(24), BigInt(14)});
    // reconstruct: sum c_k (q-1)^k
    Laurent qm1 = Laurent::q() - Laurent(1);
    Laurent back;
    auto cs = p.in_t_basis();
    for (int k = 0; k < static_cast<int>(cs.size()); ++k)
        back += Laurent(cs[k]) * qm1.pow(k);
    CHECK(back == p);
    CHECK(Laurent{}.in_t_basis().empty());
}

TEST_CASE("dominates / coeffs_nonneg") {
    Laurent lo = from_coeffs({1, 2, 0, 1});
    Laurent hi = from_coeffs({1, 3, 0, 1});
    CHECK(Laurent::dominates(lo, hi));
    CHECK(!Laurent::dominates(hi, lo));
    CHECK(Laurent::dominates(lo, lo));
    CHECK(Laurent::dominates(Laurent{}, lo));
    CHECK(lo.coeffs_nonneg());
    CHECK(!(lo - hi).coeffs_nonneg());
}

TEST_CASE("string rendering") {
    CHECK(Laurent{}.to_string() == "0");
    CHECK(Laurent(5).to_string() == "5");
    CHECK(Laurent(-1).to_string() == "-1");
    CHECK(Laurent::q().to_string() == "q");
    CHECK(from_coeffs({0, 0, 0, 0, 0, 0, 2, 1}).to_string() == "q^7+2q^6");
    CHECK(from_coeffs({1, -3, 0, 1}).to_string() == "q^3-3q+1");
    CHECK((qpow(-2) * Laurent(3)).to_string() == "3q^-2");
    CHECK((Laurent::q() - Laurent(1)).pow(2).to_string() == "q^2-2q+1");
}

TEST_CASE("factored rendering extracts (q-1) and q powers") {
    Laurent qm1 = Laurent::q() - Laurent(1);
    Laurent p = qm1.pow(2) * qpow(3) * from_coeffs({1, 1});
    CHECK(p.factored_string() == "(q-1)^2 * q^3 * (q+1)");
    CHECK(from_coeffs({1, 1}).factored_string() == "(q+1)");
    CHECK((qm1 * from_coeffs({1, 1})).factored_string() == "(q-1) * (q+1)");
    CHECK(Laurent{}.factored_string() == "0");
    CHECK(qpow(4).factored_string() == "q^4");
}

TEST_CASE("json round trip") {
    Laurent p = from_coeffs({-7, 0, 12}) + qpow(-3);
    Laurent back = Laurent::from_json(p.to_json());
    CHECK(back == p);
    CHECK(Laurent::from_json(Laurent{}.to_json()) == Laurent{});
}

TEST_CASE("interpolation recovers random integer polynomials") {
    std::mt19937 rng(915);
    std::uniform_int_distribution<int> coeff(-9, 9);
    auto pps = qmr::prime_powers(200);
    for (int trial = 0; trial < 25; ++trial) {
        int deg = trial % 9;
        Laurent p;
        for (int e = 0; e <= deg; ++e) p += Laurent::monomial(BigInt(coeff(rng)), e);
        SampleTable t;
        for (int s = 0; s < deg + 2 + 3; ++s)
            t.push_back({pps[s], p.eval(BigInt(pps[s]))});
        auto fit = qmr::interpolate(t, deg);
        REQUIRE(std::holds_alternative<Laurent>(fit));
        CHECK(std::get<Laurent>(fit) == p);
    }
}

TEST_CASE("interpolation detects non-polynomial data") {
    // 2^q is no polynomial in q
    SampleTable t;
    for (long long q : {2, 3, 4, 5, 7, 8, 9, 11, 13, 16})
        t.push_back({q, BigInt(1) << static_cast<int>(q)});
    auto fit = qmr::interpolate(t, 6);
    CHECK(std::holds_alternative<qmr::InterpolationError>(fit));
}

TEST_CASE("quasi detection separates parity classes") {
    // value = q^2 for even q, q^2 + 1 for odd q
    SampleTable t;
    for (long long q : {2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27, 29, 31, 32})
        t.push_back({q, BigInt(q) * BigInt(q) + BigInt(q % 2)});
    auto fit = qmr::detect_quasi(t, 3);
    CHECK(fit.consistent);
    CHECK(fit.is_genuine_quasi());
    CHECK(fit.class_polys.at(0) == qpow(2));
    CHECK(fit.class_polys.at(1) == qpow(2) + Laurent(1));

    SUBCASE("plain polynomial is not flagged as quasi") {
        SampleTable u;
        for (long long q : {2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19})
            u.push_back({q, BigInt(q) * 3 + 1});
        auto f2 = qmr::detect_quasi(u, 2);
        CHECK(f2.consistent);
        CHECK(!f2.is_genuine_quasi());
    }
    SUBCASE("thin data reports insufficiency without throwing") {
        SampleTable u{{2, BigInt(4)}, {3, BigInt(9)}};
        auto f3 = qmr::detect_quasi(u, 5);
        CHECK(!f3.consistent);
        CHECK(!f3.note.empty());
    }
}

TEST_CASE("prime power enumeration") {
    auto pps = qmr::prime_powers(32);
    CHECK(pps == std::vector<long long>{2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27, 29,
                                        31, 32});
    long long p = 0;
    int k = 0;
    CHECK(qmr::is_prime_power(27, &p, &k));
    CHECK(p == 3);
    CHECK(k == 3);
    CHECK(!qmr::is_prime_power(1));
    CHECK(!qmr::is_prime_power(36));
}
