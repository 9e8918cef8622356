#pragma once

#include <functional>
#include <vector>

#include "qmatrank/board.hpp"
#include "qmatrank/laurent.hpp"

namespace qmr {

enum class RookConvention { SE, NE };

// non-attacking placements of r rooks on the cells of b, enumerated in
// row-major order; the callback returns false to stop early
void for_each_placement(const Board& b, int r,
                        const std::function<bool(const std::vector<Cell>&)>& visit);
long long placement_count(const Board& b, int r);

// Cells of b left unshadowed by a placement.  SE: a rook cancels its own
// cell, everything south of it in its column and everything east of it in
// its row.  NE: the same with north instead of south.  On the full board an
// n-rook placement w has SE count inv(w) and NE count binom(n,2) - inv(w).
int se_inversions(const Board& b, const std::vector<Cell>& placement);
int ne_inversions(const Board& b, const std::vector<Cell>& placement);

// sum of q^{inversions} over all r-rook placements
Laurent rook_poly(const Board& b, int r, RookConvention conv);

// closed form for the full-placement SE polynomial of a straight shape with
// top-left-justified rows (the orientation Board::straight_shape builds):
//   R_n^SE(S_lambda) = q^{n^2 - |lambda|} * prod_{i=1..n} [lambda_{n-i+1} - i + 1]_q
// with lambda padded to n parts.  The bare product is the classical statement
// for bottom-justified boards; flipping rows costs the q-power in front.
// Any factor [m]_q with m <= 0 makes the whole polynomial zero (no full
// placement fits).
Laurent garsia_remmel(const std::vector<int>& lambda, int n);

}  // namespace qmr
