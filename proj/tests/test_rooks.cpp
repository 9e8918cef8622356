#include <set>

#include "doctest.h"
#include "qmatrank/board.hpp"
#include "qmatrank/laurent.hpp"
#include "qmatrank/perm.hpp"
#include "qmatrank/rooks.hpp"

using qmr::BigInt;
using qmr::Board;
using qmr::Cell;
using qmr::Laurent;
using qmr::RookConvention;

TEST_CASE("placement enumeration") {
    Board full = Board::full(3, 3);
    CHECK(qmr::placement_count(full, 0) == 1);
    CHECK(qmr::placement_count(full, 1) == 9);
    CHECK(qmr::placement_count(full, 2) == 18);
    CHECK(qmr::placement_count(full, 3) == 6);
    CHECK(qmr::placement_count(full, 4) == 0);

    // staircase: r-rook placements counted by Stirling-like recursion;
    // for lambda = (2,1) the full placements are (1,2),(2,1) only
    Board st = Board::straight_shape({2, 1}, 2);
    CHECK(qmr::placement_count(st, 2) == 1);
    CHECK(qmr::placement_count(st, 1) == 3);

    int visits = 0;
    qmr::for_each_placement(full, 2, [&](const std::vector<Cell>& p) {
        CHECK(p.size() == 2);
        CHECK(p[0].i != p[1].i);
        CHECK(p[0].j != p[1].j);
        ++visits;
        return true;
    });
    CHECK(visits == 18);

    // early stop
    visits = 0;
    qmr::for_each_placement(full, 1, [&](const std::vector<Cell>&) {
        return ++visits < 4;
    });
    CHECK(visits == 4);
}

TEST_CASE("inversion counts on the full board match permutation statistics") {
    int n = 4;
    Board full = Board::full(n, n);
    for (const qmr::Perm& w : qmr::all_perms(n)) {
        std::vector<Cell> p;
        for (int i = 1; i <= n; ++i) p.push_back({i, w(i)});
        CHECK(qmr::se_inversions(full, p) == w.inversions());
        CHECK(qmr::ne_inversions(full, p) == n * (n - 1) / 2 - w.inversions());
    }
    // hence the two full-board polynomials agree (both are [n]_q!)
    Laurent se = qmr::rook_poly(full, n, RookConvention::SE);
    Laurent ne = qmr::rook_poly(full, n, RookConvention::NE);
    CHECK(se == ne);
    CHECK(se == Laurent::bracket(1) * Laurent::bracket(2) * Laurent::bracket(3) *
                    Laurent::bracket(4));
}

TEST_CASE("empty placement leaves every cell unshadowed") {
    Board b = Board::straight_shape({3, 1}, 3);
    CHECK(qmr::se_inversions(b, {}) == b.cell_count());
    CHECK(qmr::ne_inversions(b, {}) == b.cell_count());
    CHECK(qmr::rook_poly(b, 0, RookConvention::SE) == Laurent::monomial(1, b.cell_count()));
}

TEST_CASE("single rook shadows its row arm and column arm") {
    // 2x2 full board, rook at (1,1): SE kills (1,1),(2,1),(1,2) leaving (2,2)
    Board b = Board::full(2, 2);
    CHECK(qmr::se_inversions(b, {{1, 1}}) == 1);
    // NE kills the rook cell, its north arm (empty) and east arm ((1,2)),
    // leaving (2,1),(2,2)
    CHECK(qmr::ne_inversions(b, {{1, 1}}) == 2);
    // rook at (2,2): north arm (1,2), east arm empty, leaving (1,1),(2,1)
    CHECK(qmr::ne_inversions(b, {{2, 2}}) == 2);
    CHECK(qmr::se_inversions(b, {{2, 2}}) == 3);
}

TEST_CASE("NE counting example board") {
    // B = [4]x[4] minus {(1,1),(3,4),(4,1),(4,3),(4,4)} admits exactly three
    // full placements, with NE-inversion counts {0,1,1}
    Board s(4, 4, {{1, 1}, {3, 4}, {4, 1}, {4, 3}, {4, 4}});
    Board b = s.complement();
    CHECK(b.ne_closed());
    CHECK(qmr::placement_count(b, 4) == 3);
    std::multiset<int> invs;
    qmr::for_each_placement(b, 4, [&](const std::vector<Cell>& p) {
        invs.insert(qmr::ne_inversions(b, p));
        return true;
    });
    CHECK(invs == std::multiset<int>{0, 1, 1});
    CHECK(qmr::rook_poly(b, 4, RookConvention::NE).to_string() == "2q+1");
}

TEST_CASE("rook polynomial evaluates to the placement count at q = 1") {
    Board b = Board::skew_shape({4, 4, 3, 2}, {2, 1}, 4);
    for (int r = 0; r <= 4; ++r) {
        for (auto conv : {RookConvention::SE, RookConvention::NE}) {
            Laurent p = qmr::rook_poly(b, r, conv);
            CHECK(p.eval(BigInt(1)) == qmr::placement_count(b, r));
            CHECK(p.coeffs_nonneg());
        }
    }
}

TEST_CASE("pinned skew-board polynomials") {
    Board b = Board::skew_shape({4, 4, 3, 2}, {3, 1}, 4);
    CHECK(qmr::rook_poly(b, 3, RookConvention::SE).to_string() ==
          "q^6+2q^5+3q^4+5q^3+6q^2+1");
    CHECK(qmr::rook_poly(b, 3, RookConvention::NE).to_string() == "q^4+7q^3+8q^2+2q");
}

TEST_CASE("garsia-remmel product matches direct SE enumeration on straight shapes") {
    std::vector<std::vector<int>> shapes = {
        {}, {1}, {2, 1}, {3, 3, 3}, {4, 3, 2, 1}, {5, 5, 2, 1}, {5, 4, 4, 2, 1},
    };
    for (const auto& lam : shapes) {
        CAPTURE(lam.size());
        int n = 5;
        Laurent prod = qmr::garsia_remmel(lam, n);
        Laurent direct = qmr::rook_poly(Board::straight_shape(lam, n), n, RookConvention::SE);
        CHECK(prod == direct);
    }
    CHECK(qmr::garsia_remmel({4, 3, 2, 1}, 5) == Laurent{});  // 5 rooks cannot fit
    // the staircase has exactly one full placement; its five rooks shadow only
    // their own cells, leaving all 10 other cells counted
    CHECK(qmr::garsia_remmel({5, 4, 3, 2, 1}, 5) == Laurent::monomial(1, 10));
    CHECK(qmr::garsia_remmel({2, 1}, 2).to_string() == "q");
    // full square: [n]_q!
    CHECK(qmr::garsia_remmel({3, 3, 3}, 3) ==
          Laurent::bracket(1) * Laurent::bracket(2) * Laurent::bracket(3));
    // on the bottom-justified arrangement the same statistic gives the bare
    // product, here [1][1][2][1][1] = 1 + q
    std::vector<int> lam = {5, 4, 4, 2, 1};
    std::vector<Cell> cells;
    for (int i = 1; i <= 5; ++i)
        for (int j = 1; j <= lam[static_cast<size_t>(5 - i)]; ++j) cells.push_back({i, j});
    CHECK(qmr::rook_poly(Board(5, 5, cells), 5, RookConvention::SE).to_string() == "q+1");
    CHECK(qmr::garsia_remmel({5, 4, 4, 2, 1}, 5) ==
          qmr::rook_poly(Board::straight_shape({5, 4, 4, 2, 1}, 5), 5, RookConvention::SE));
}

TEST_CASE("skew boards tie SE and NE together by q-reversal") {
    // R^SE_n(S, q) = q^(C(n,2) - |mu|) R^NE_n(S, 1/q) for skew boards
    std::vector<std::pair<std::vector<int>, std::vector<int>>> shapes = {
        {{4, 4, 3, 2}, {3, 1}},
        {{4, 4, 4, 4}, {}},
        {{4, 3, 2, 1}, {2, 1}},
        {{4, 4, 2, 2}, {2, 2}},
    };
    for (auto& [lam, mu] : shapes) {
        int n = 4;
        Board b = Board::skew_shape(lam, mu, n);
        auto shape = b.as_skew();
        REQUIRE(shape.has_value());
        Laurent se = qmr::rook_poly(b, n, RookConvention::SE);
        Laurent ne = qmr::rook_poly(b, n, RookConvention::NE);
        int shift = n * (n - 1) / 2 - static_cast<int>(shape->mu_size());
        CHECK(se == ne.subst_qinv().shifted(shift));
    }
}
