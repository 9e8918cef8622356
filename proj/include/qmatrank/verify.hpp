#pragma once

#include <string>
#include <vector>

#include "qmatrank/counter.hpp"
#include "qmatrank/perm.hpp"

namespace qmr {

struct Failure {
    std::string witness;
    std::string expected;
    std::string actual;
};

struct VerificationReport {
    std::string claim;
    int n_lo = 1, n_hi = 1;
    long long instances = 0;  // includes cases covered via symmetry
    std::vector<Failure> failures;
    double seconds = 0.0;
    bool passed() const { return failures.empty(); }
    std::string to_json() const;
};

// For every w in S_n, n <= n_max, and 0 <= r <= n: the count over the
// permutation-diagram board is (q-1)^r times a polynomial with nonnegative
// coefficients.  Skipped symmetry images are spot-checked at q = 2.
VerificationReport verify_rank_factorization(int n_max, Counter& counter);

// Full-rank quotient vs the shifted Poincare polynomial of the upper Bruhat
// interval: coefficient-wise bounded, equal exactly on the four-pattern
// avoiders.
VerificationReport verify_poincare_bound(int n_max, Counter& counter);

// Full-rank quotient vs the shifted count over the left hull, equal iff
// the four patterns are avoided; pins the rank-1 counterexample at w = 21
// and the hull-size inequality for 1324-avoiders.
VerificationReport verify_hull_bound(int n_max, Counter& counter);

// n non-attacking rooks on the diagram complement vs on the left hull:
// counts agree iff the four patterns are avoided.
VerificationReport verify_rook_equinumerosity(int n_max);

// Rank-1 counts expanded in t = q - 1 have nonnegative coefficients:
// exhaustive over [4] x [4] boards plus random [6] x [6] boards.
VerificationReport verify_rank1_t_positivity(int random_boards, unsigned seed);

// dispatch by claim id: rank-factorization, poincare-bound, hull-bound,
// rook-equinumerosity, rank1-t-positivity
VerificationReport run_verification(const std::string& claim, int n_max,
                                    Counter& counter);

}  // namespace qmr
