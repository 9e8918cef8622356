#include "doctest.h"
#include "qmatrank/perm.hpp"
#include "qmatrank/series.hpp"

using qmr::BigInt;
using qmr::Perm;
using qmr::SeriesPrefix;

namespace {

std::vector<BigInt> big(std::initializer_list<long long> xs) {
    return std::vector<BigInt>(xs.begin(), xs.end());
}

}  // namespace

TEST_CASE("pattern-avoider counting") {
    std::vector<Perm> v2143 = {Perm::parse("2143")};
    CHECK(qmr::count_avoiders(v2143, 0) == 1);
    CHECK(qmr::count_avoiders(v2143, 1) == 1);
    CHECK(qmr::count_avoiders(v2143, 4) == 23);
    CHECK(qmr::count_avoiders(v2143, 5) == 103);
    // no patterns: everything counts
    CHECK(qmr::count_avoiders({}, 4) == 24);
    // 123 and 321 together: zero from n = 5 on
    std::vector<Perm> both = {Perm::parse("123"), Perm::parse("321")};
    CHECK(qmr::count_avoiders(both, 4) == 4);
    CHECK(qmr::count_avoiders(both, 5) == 0);
    CHECK_THROWS_AS(qmr::count_avoiders(v2143, 10), std::invalid_argument);
}

TEST_CASE("vexillary series prefix") {
    SeriesPrefix v = qmr::vexillary_series(6);
    CHECK(v.coeffs == big({1, 1, 2, 6, 23, 103, 513}));
    CHECK_THROWS_AS(qmr::vexillary_series(10), std::invalid_argument);
}

TEST_CASE("indecomposable series from the functional equation") {
    // I(x) = (1-x)^2 V(x) + x - 1
    SeriesPrefix v = qmr::vexillary_series(6);
    SeriesPrefix i = qmr::i_from_v(v);
    CHECK(i.coeffs == big({0, 0, 1, 3, 13, 63, 330}));
    // cross-check against a direct count of indecomposable 2143-avoiders
    for (int n = 2; n <= 6; ++n) {
        long long direct = 0;
        for (const Perm& w : qmr::all_perms(n))
            if (!w.contains(Perm::parse("2143")) && !qmr::is_decomposable(w)) ++direct;
        CHECK(i.coeffs[n] == direct);
    }
}

TEST_CASE("skew-vexillary series from the functional equation") {
    // SV(x) = (1-x) V(x)^2 - V(x) + 1/(1-x)
    SeriesPrefix v = qmr::vexillary_series(6);
    SeriesPrefix sv = qmr::sv_from_v(v);
    CHECK(sv.coeffs == big({1, 1, 2, 6, 24, 112, 572}));
    // three-way agreement: series, obstruction avoidance, decomposition
    for (int n = 0; n <= 6; ++n) {
        CHECK(sv.coeffs[n] == qmr::count_avoiders(qmr::sv_obstructions(), n));
        if (n > 5) continue;
        long long via_decompose = 0;
        for (const Perm& w : qmr::all_perms(n))
            if (qmr::sv_decompose(w).has_value()) ++via_decompose;
        if (n > 0) CHECK(sv.coeffs[n] == via_decompose);
    }
}

TEST_CASE("json export") {
    std::string js = qmr::series_json(5);
    CHECK(js.find("\"V\"") != std::string::npos);
    CHECK(js.find("\"I\"") != std::string::npos);
    CHECK(js.find("\"SV\"") != std::string::npos);
    CHECK(js.find("103") != std::string::npos);   // V_5
    CHECK(js.find("112") != std::string::npos);   // SV_5
    CHECK(js.find("63") != std::string::npos);    // I_5
}
