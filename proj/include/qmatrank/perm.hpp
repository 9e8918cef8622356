#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qmatrank/board.hpp"
#include "qmatrank/laurent.hpp"

namespace qmr {

// Permutation of [n] in one-line notation, 1-based values.
class Perm {
  public:
    Perm() = default;
    explicit Perm(std::vector<int> word);
    static Perm identity(int n);
    // "41523", or comma-separated "10,3,1,2,..." for n > 9
    static Perm parse(std::string_view text);

    int n() const { return static_cast<int>(w_.size()); }
    int operator()(int i) const { return w_[i - 1]; }
    const std::vector<int>& word() const { return w_; }

    Perm inverse() const;
    Perm reverse_complement() const;  // rc(w)_i = n+1 - w_{n+1-i}
    int inversions() const;
    // order-isomorphic copy of pattern as a subsequence
    bool contains(const Perm& pattern) const;
    bool avoids_all(const std::vector<Perm>& patterns) const;
    // values w_i with w_i > w_k for all k < i
    std::vector<int> ltr_max_values() const;
    // pattern of the values at positions [from, to], renumbered to 1..len
    Perm pattern_at(int from, int to) const;

    std::string to_string() const;
    bool operator==(const Perm&) const = default;
    auto operator<=>(const Perm&) const = default;

  private:
    std::vector<int> w_;
};

std::vector<Perm> all_perms(int n);

// cells (i,j) with w(i) > j and w^{-1}(j) > i; #cells = inv(w)
Board rothe_diagram(const Perm& w);

// Union of the rectangles [i, j] x [w_i, w_j] over weak non-inversions
// i <= j, w_i <= w_j, in the same row-is-position coordinates as the Rothe
// diagram.  Always a skew-shape board; contains every cell (i, w_i) via the
// degenerate i = j rectangles.
Board left_hull(const Perm& w);

// smallest k such that {w_1..w_k} = {1..k} and both the prefix pattern and
// the suffix pattern avoid 2143
struct SvDecomposition {
    int k = 0;
    Perm prefix;  // pattern of w_1..w_k
    Perm suffix;  // pattern of w_{k+1}..w_n
};
std::optional<SvDecomposition> sv_decompose(const Perm& w);

bool is_vexillary(const Perm& w);       // avoids 2143
bool is_skew_vexillary(const Perm& w);  // avoids the nine obstructions below
const std::vector<Perm>& sv_obstructions();
// patterns characterising when the skew-hull identity holds
const std::vector<Perm>& hull_obstructions();  // 1324, 24153, 31524, 426153

// some proper prefix w_1..w_k equals {1..k}, 0 < k < n
bool is_decomposable(const Perm& w);

// lambda/mu whose skew board has complement a row/column rearrangement of
// R_w; skew-vexillary w only
SkewShape sv_shape(const Perm& w);
// permutation v avoiding the four hull patterns whose left hull carries the
// same full-placement NE rook polynomial as S_{lambda/mu(w)}; the boards
// themselves coincide often but not always (w = 21 already separates them).
// Skew-vexillary w only.
Perm construct_v(const Perm& w);

// injection R_w -> complement(H_L(w)) for 1324-avoiding w:
// identity on cells with no earlier row k < i having w_k < j, and
// (i,j) -> (w^{-1}_j, w_i) elsewhere; returns (source, image) pairs
std::vector<std::pair<Cell, Cell>> phi_pairs(const Perm& w);

// strong order comparison via the rank-matrix criterion
bool bruhat_leq(const Perm& u, const Perm& w);
// sum of q^{inv(u)} over u >= w in S_n; n <= 8
Laurent poincare_upper(const Perm& w);

}  // namespace qmr
