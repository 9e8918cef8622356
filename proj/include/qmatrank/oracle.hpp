#pragma once

#include <stdexcept>

#include "qmatrank/bigint.hpp"
#include "qmatrank/board.hpp"
#include "qmatrank/field.hpp"

namespace qmr {

class OracleInfeasible : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct OracleLimits {
    long long max_states = 10'000'000;  // echelon states the DP may hold
};

// sum over k = 0..min(m,n,r) of the Gaussian binomial [n choose k]_q: an upper
// bound for the number of row-space states the DP can visit
BigInt oracle_state_bound(int m, int n, int r, long long q);

// Row-by-row dynamic program over row spaces kept in reduced echelon form.
// The number of rows of a subspace V that respect a zero set Z is
// q^{dim(V cap ann Z)}, which prices the rank-preserving transitions; the
// rank-raising ones enumerate coset representatives of that intersection.
// Supported: q <= 16 with n <= 11, or q <= 64 with n <= 8; r <= 8.
// Throws OracleInfeasible when the state bound exceeds limits.max_states or
// the shape caps are violated.
BigInt count_rank_dp(const Board& s, int r, const Field& f, const OracleLimits& limits = {});

// whether count_rank_dp would accept this instance (shape caps + state bound)
bool oracle_feasible(const Board& s, int r, long long q,
                     const OracleLimits& limits = {});

// Direct enumeration of all q^{free} support-respecting matrices; refuses
// when the board has more than 12 free entries.
BigInt count_rank_naive(const Board& s, int r, const Field& f);

}  // namespace qmr
