#include "qmatrank/rooks.hpp"

#include <algorithm>

namespace qmr {

namespace {

bool placement_rec(const Board& b, int r, int row, uint64_t used_cols,
                   std::vector<Cell>& acc,
                   const std::function<bool(const std::vector<Cell>&)>& visit) {
    if (static_cast<int>(acc.size()) == r) return visit(acc);
    if (row > b.rows()) return true;
    if (b.rows() - row + 1 < r - static_cast<int>(acc.size())) return true;  // cannot finish
    // skip this row
    if (!placement_rec(b, r, row + 1, used_cols, acc, visit)) return false;
    // or place a rook in it
    uint64_t avail = b.row_mask(row) & ~used_cols;
    while (avail) {
        int j = std::countr_zero(avail) + 1;
        avail &= avail - 1;
        acc.push_back({row, j});
        bool go = placement_rec(b, r, row + 1, used_cols | (uint64_t(1) << (j - 1)), acc, visit);
        acc.pop_back();
        if (!go) return false;
    }
    return true;
}

}  // namespace

void for_each_placement(const Board& b, int r,
                        const std::function<bool(const std::vector<Cell>&)>& visit) {
    if (r < 0) return;
    std::vector<Cell> acc;
    placement_rec(b, r, 1, 0, acc, visit);
}

long long placement_count(const Board& b, int r) {
    long long c = 0;
    for_each_placement(b, r, [&](const std::vector<Cell>&) {
        ++c;
        return true;
    });
    return c;
}

int se_inversions(const Board& b, const std::vector<Cell>& placement) {
    int count = 0;
    for (const Cell& c : b.cells()) {
        bool shadowed = false;
        for (const Cell& rk : placement) {
            if ((rk.j == c.j && rk.i <= c.i) || (rk.i == c.i && rk.j <= c.j)) {
                shadowed = true;
                break;
            }
        }
        if (!shadowed) ++count;
    }
    return count;
}

int ne_inversions(const Board& b, const std::vector<Cell>& placement) {
    int count = 0;
    for (const Cell& c : b.cells()) {
        bool shadowed = false;
        for (const Cell& rk : placement) {
            if ((rk.j == c.j && rk.i >= c.i) || (rk.i == c.i && rk.j <= c.j)) {
                shadowed = true;
                break;
            }
        }
        if (!shadowed) ++count;
    }
    return count;
}

Laurent rook_poly(const Board& b, int r, RookConvention conv) {
    Laurent p;
    for_each_placement(b, r, [&](const std::vector<Cell>& pl) {
        int inv = conv == RookConvention::SE ? se_inversions(b, pl) : ne_inversions(b, pl);
        p += Laurent::monomial(1, inv);
        return true;
    });
    return p;
}

Laurent garsia_remmel(const std::vector<int>& lambda, int n) {
    std::vector<int> lam = lambda;
    std::sort(lam.rbegin(), lam.rend());
    lam.resize(n, 0);
    Laurent p(1);
    long long size = 0;
    for (int i = 1; i <= n; ++i) {
        // lam[n-i] - i + 1 drops by at most 1 per step and starts >= 0, so a
        // negative factor is always preceded by a zero one: the early return
        // fires before bracket() ever sees a negative argument.
        p *= Laurent::bracket(lam[n - i] - i + 1);
        if (p.is_zero()) return p;
        size += lam[i - 1];
    }
    // bottom-justified boards give the bare product; top-left-justified rows
    // shift every full placement's statistic by n^2 - |lambda|
    return Laurent::monomial(1, static_cast<int>(n * n - size)) * p;
}

}  // namespace qmr
