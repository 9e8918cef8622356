#pragma once

#include <string>
#include <vector>

#include "qmatrank/bigint.hpp"
#include "qmatrank/perm.hpp"

namespace qmr {

// ordinary generating series prefix; coeffs[n] counts length-n objects
struct SeriesPrefix {
    std::vector<BigInt> coeffs;
};

// permutations of [n] avoiding every listed pattern; exhaustive, n <= 9
long long count_avoiders(const std::vector<Perm>& patterns, int n);

// prefix of the 2143-avoider series, exhaustive up to nmax <= 9
SeriesPrefix vexillary_series(int nmax);

// indecomposable-avoider series: I(x) = (1 - x)^2 V(x) + x - 1
SeriesPrefix i_from_v(const SeriesPrefix& v);

// SV(x) = (1 - x) V(x)^2 - V(x) + 1/(1 - x), truncated to V's length
SeriesPrefix sv_from_v(const SeriesPrefix& v);

// the three prefixes as a JSON object {"V": [...], "I": [...], "SV": [...]}
std::string series_json(int nmax);

}  // namespace qmr
