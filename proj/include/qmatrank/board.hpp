#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qmr {

struct Cell {
    int i = 0, j = 0;  // 1-indexed row, column
    auto operator<=>(const Cell&) const = default;
};

class ParseError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct SkewShape {
    std::vector<int> lambda;  // weakly decreasing, entries in [0, n]
    std::vector<int> mu;      // contained in lambda
    int n = 0;

    int lam(int i) const { return i <= static_cast<int>(lambda.size()) ? lambda[i - 1] : 0; }
    int muu(int i) const { return i <= static_cast<int>(mu.size()) ? mu[i - 1] : 0; }
    long long mu_size() const;
    // no row or column meets both the removed shape and the outside of lambda
    bool nonoverlapping() const;
};

// A board is a subset S of the grid [m] x [n], 1-indexed, row masks packed in
// 64-bit words (n <= 64, m <= 64: far beyond anything the counting engine can
// digest anyway).
class Board {
  public:
    static constexpr int max_side = 64;

    Board() = default;
    Board(int m, int n);  // empty cell set
    Board(int m, int n, const std::vector<Cell>& cells);

    static Board full(int m, int n);
    // S_lambda inside [n] x [n]: row i holds columns 1..lambda_i
    static Board straight_shape(const std::vector<int>& lambda, int n);
    static Board skew_shape(const std::vector<int>& lambda, const std::vector<int>& mu, int n);

    int rows() const { return m_; }
    int cols() const { return n_; }
    bool contains(int i, int j) const { return (row_[i - 1] >> (j - 1)) & 1; }
    uint64_t row_mask(int i) const { return row_[i - 1]; }
    int cell_count() const;
    int row_count(int i) const;
    int col_count(int j) const;
    std::vector<Cell> cells() const;  // row-major sorted

    Board complement() const;
    Board transposed() const;
    // row_to[i] / col_to[j] give the destination (1-based) of row i / col j
    Board permuted(const std::vector<int>& row_to, const std::vector<int>& col_to) const;
    Board without_row(int i) const;
    Board without_col(int j) const;
    Board with_cell(int i, int j) const;
    Board without_cell(int i, int j) const;

    bool operator==(const Board&) const = default;

    // closure property: i' < i, j < j' with (i,j),(i',j),(i,j') in S forces (i',j') in S
    bool ne_closed() const;
    // (i,j),(k,l) in S with i > k, j < l forces (k,j) in S
    bool le_closed() const;
    // row sets pairwise comparable under inclusion: the board can be turned
    // into a straight shape by permuting rows and columns
    bool rows_nested() const;
    // lambda/mu with S == S_{lambda/mu}; requires a square board
    std::optional<SkewShape> as_skew() const;

    struct Profiles {
        std::vector<int> row_in, row_out, col_in, col_out;
    };
    Profiles profiles() const;

    // canonical representative under the row/column sorting heuristic; a
    // count-preserving permutation of the board, idempotent, deterministic
    Board normalized() const;
    uint64_t normal_hash() const;

    // canonical "coords:m,n:(i,j);..." spec; Board::parse round-trips it
    std::string format() const;
    // grammar: coords:m,n:(i,j);(i,j);...  lambda:n:4,3,2  skew:n:5,4/2,1
    //          rothe:41523  hull:35142  with optional ":complement" suffix;
    // whitespace is ignored everywhere
    static Board parse(std::string_view spec);

  private:
    int m_ = 0, n_ = 0;
    std::vector<uint64_t> row_;
};

}  // namespace qmr
