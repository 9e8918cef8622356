#include "doctest.h"
#include "qmatrank/counter.hpp"
#include "qmatrank/verify.hpp"

using qmr::Counter;
using qmr::VerificationReport;

namespace {

Counter& shared_counter() {
    static Counter counter;
    return counter;
}

}  // namespace

TEST_CASE("rank factorization sweep passes") {
    VerificationReport rep = qmr::verify_rank_factorization(4, shared_counter());
    CHECK(rep.passed());
    CHECK(rep.claim == "rank-factorization");
    CHECK(rep.n_lo == 1);
    CHECK(rep.n_hi == 4);
    // every (w, r) pair with 0 <= r <= n is accounted for, including the
    // symmetry-skipped ones: sum over n of n! * (n+1)
    CHECK(rep.instances == 1 * 2 + 2 * 3 + 6 * 4 + 24 * 5);
    CHECK(rep.seconds >= 0.0);
}

TEST_CASE("poincare bound sweep passes") {
    VerificationReport rep = qmr::verify_poincare_bound(4, shared_counter());
    CHECK(rep.passed());
    CHECK(rep.claim == "poincare-bound");
    CHECK(rep.instances == 1 + 2 + 6 + 24);
}

TEST_CASE("hull bound sweep passes and sees the rank-1 counterexample") {
    VerificationReport rep = qmr::verify_hull_bound(4, shared_counter());
    CHECK(rep.passed());
    CHECK(rep.claim == "hull-bound");
    CHECK(rep.instances >= 1 + 2 + 6 + 24);
}

TEST_CASE("rook equinumerosity sweep passes") {
    VerificationReport rep = qmr::verify_rook_equinumerosity(5);
    CHECK(rep.passed());
    CHECK(rep.claim == "rook-equinumerosity");
    CHECK(rep.instances == 1 + 2 + 6 + 24 + 120);
}

TEST_CASE("rank-1 positivity in the shifted basis") {
    VerificationReport rep = qmr::verify_rank1_t_positivity(25, 7u);
    CHECK(rep.passed());
    CHECK(rep.claim == "rank1-t-positivity");
    CHECK(rep.instances == 65536 + 25);
    // reproducible: same seed, same outcome and instance count
    VerificationReport again = qmr::verify_rank1_t_positivity(25, 7u);
    CHECK(again.instances == rep.instances);
    CHECK(again.passed() == rep.passed());
}

TEST_CASE("dispatch by claim id") {
    VerificationReport rep = qmr::run_verification("rook-equinumerosity", 4, shared_counter());
    CHECK(rep.claim == "rook-equinumerosity");
    CHECK(rep.passed());
    CHECK_THROWS_AS(qmr::run_verification("no-such-claim", 3, shared_counter()),
                    std::invalid_argument);
}

TEST_CASE("report serialisation") {
    VerificationReport rep;
    rep.claim = "rank-factorization";
    rep.n_lo = 1;
    rep.n_hi = 3;
    rep.instances = 42;
    rep.seconds = 0.5;
    rep.failures.push_back({"w=21 r=1", "2q+1", "2q"});
    std::string js = rep.to_json();
    CHECK(js.find("\"claim\":\"rank-factorization\"") != std::string::npos);
    CHECK(js.find("\"instances\":42") != std::string::npos);
    CHECK(js.find("\"witness\":\"w=21 r=1\"") != std::string::npos);
    CHECK(js.find("\"passed\":false") != std::string::npos);
    CHECK(!rep.passed());
}
