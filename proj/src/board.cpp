#include "qmatrank/board.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <numeric>
#include <set>
#include <sstream>

#include "qmatrank/perm.hpp"

namespace qmr {

long long SkewShape::mu_size() const {
    long long s = 0;
    for (int x : mu) s += x;
    return s;
}

bool SkewShape::nonoverlapping() const {
    // rows: row i meets S_mu iff mu_i > 0, meets the outside iff lambda_i < n
    int nparts = static_cast<int>(lambda.size());
    for (int i = 1; i <= nparts; ++i)
        if (muu(i) > 0 && lam(i) < n) return false;
    for (int i = nparts + 1; i <= n; ++i)
        if (muu(i) > 0) return false;  // unreachable when mu <= lambda
    // columns: column j meets S_mu iff mu'_j > 0, the outside iff lambda'_j < n
    for (int j = 1; j <= n; ++j) {
        int mu_col = 0, lam_col = 0;
        for (int i = 1; i <= n; ++i) {
            if (muu(i) >= j) ++mu_col;
            if (lam(i) >= j) ++lam_col;
        }
        if (mu_col > 0 && lam_col < n) return false;
    }
    return true;
}

namespace {

void check_dims(int m, int n) {
    if (m < 0 || n < 0 || m > Board::max_side || n > Board::max_side)
        throw std::invalid_argument("Board: dimensions must lie in [0, 64]");
}

void check_partition(const std::vector<int>& lambda, int n, const char* what) {
    if (static_cast<int>(lambda.size()) > n)
        throw std::invalid_argument(std::string(what) + ": more than n parts");
    for (size_t i = 0; i < lambda.size(); ++i) {
        if (lambda[i] < 0 || lambda[i] > n)
            throw std::invalid_argument(std::string(what) + ": part out of range");
        if (i && lambda[i] > lambda[i - 1])
            throw std::invalid_argument(std::string(what) + ": parts must weakly decrease");
    }
}

}  // namespace

Board::Board(int m, int n) : m_(m), n_(n), row_(m, 0) { check_dims(m, n); }

Board::Board(int m, int n, const std::vector<Cell>& cells) : Board(m, n) {
    for (const Cell& c : cells) {
        if (c.i < 1 || c.i > m || c.j < 1 || c.j > n)
            throw std::invalid_argument("Board: cell out of range");
        if (contains(c.i, c.j)) throw std::invalid_argument("Board: duplicate cell");
        row_[c.i - 1] |= uint64_t(1) << (c.j - 1);
    }
}

Board Board::full(int m, int n) {
    Board b(m, n);
    uint64_t mask = n == 64 ? ~uint64_t(0) : ((uint64_t(1) << n) - 1);
    for (auto& r : b.row_) r = mask;
    return b;
}

Board Board::straight_shape(const std::vector<int>& lambda, int n) {
    check_dims(n, n);
    check_partition(lambda, n, "straight shape");
    Board b(n, n);
    for (size_t i = 0; i < lambda.size(); ++i)
        if (lambda[i] > 0) b.row_[i] = (uint64_t(1) << lambda[i]) - 1;
    return b;
}

Board Board::skew_shape(const std::vector<int>& lambda, const std::vector<int>& mu, int n) {
    check_dims(n, n);
    check_partition(lambda, n, "skew shape outer");
    check_partition(mu, n, "skew shape inner");
    if (mu.size() > lambda.size())
        throw std::invalid_argument("skew shape: inner has more parts than outer");
    for (size_t i = 0; i < mu.size(); ++i)
        if (mu[i] > lambda[i])
            throw std::invalid_argument("skew shape: inner not contained in outer");
    Board b = straight_shape(lambda, n);
    for (size_t i = 0; i < mu.size(); ++i)
        if (mu[i] > 0) b.row_[i] &= ~((uint64_t(1) << mu[i]) - 1);
    return b;
}

int Board::cell_count() const {
    int c = 0;
    for (uint64_t r : row_) c += std::popcount(r);
    return c;
}

int Board::row_count(int i) const { return std::popcount(row_[i - 1]); }

int Board::col_count(int j) const {
    int c = 0;
    for (uint64_t r : row_) c += (r >> (j - 1)) & 1;
    return c;
}

std::vector<Cell> Board::cells() const {
    std::vector<Cell> out;
    for (int i = 1; i <= m_; ++i)
        for (uint64_t r = row_[i - 1]; r;) {
            int j = std::countr_zero(r) + 1;
            out.push_back({i, j});
            r &= r - 1;
        }
    return out;
}

Board Board::complement() const {
    Board b(m_, n_);
    uint64_t mask = n_ == 64 ? ~uint64_t(0) : ((uint64_t(1) << n_) - 1);
    for (int i = 0; i < m_; ++i) b.row_[i] = ~row_[i] & mask;
    return b;
}

Board Board::transposed() const {
    Board b(n_, m_);
    for (int i = 1; i <= m_; ++i)
        for (int j = 1; j <= n_; ++j)
            if (contains(i, j)) b.row_[j - 1] |= uint64_t(1) << (i - 1);
    return b;
}

Board Board::permuted(const std::vector<int>& row_to, const std::vector<int>& col_to) const {
    if (static_cast<int>(row_to.size()) != m_ || static_cast<int>(col_to.size()) != n_)
        throw std::invalid_argument("Board::permuted: permutation sizes must match dims");
    Board b(m_, n_);
    for (int i = 1; i <= m_; ++i)
        for (int j = 1; j <= n_; ++j)
            if (contains(i, j)) b.row_[row_to[i - 1] - 1] |= uint64_t(1) << (col_to[j - 1] - 1);
    if (b.cell_count() != cell_count())
        throw std::invalid_argument("Board::permuted: not a permutation");
    return b;
}

Board Board::without_row(int i) const {
    Board b(m_ - 1, n_);
    for (int r = 0, w = 0; r < m_; ++r)
        if (r != i - 1) b.row_[w++] = row_[r];
    return b;
}

Board Board::without_col(int j) const {
    Board b(m_, n_ - 1);
    uint64_t low = (uint64_t(1) << (j - 1)) - 1;
    for (int r = 0; r < m_; ++r) b.row_[r] = (row_[r] & low) | ((row_[r] >> j) << (j - 1));
    return b;
}

Board Board::with_cell(int i, int j) const {
    Board b = *this;
    b.row_[i - 1] |= uint64_t(1) << (j - 1);
    return b;
}

Board Board::without_cell(int i, int j) const {
    Board b = *this;
    b.row_[i - 1] &= ~(uint64_t(1) << (j - 1));
    return b;
}

bool Board::ne_closed() const {
    // for rows i' < i sharing a column: everything in row i to the right of
    // the first shared column must also lie in row i'
    for (int hi = 0; hi < m_; ++hi)
        for (int lo = hi + 1; lo < m_; ++lo) {
            uint64_t common = row_[hi] & row_[lo];
            if (!common) continue;
            int jmin = std::countr_zero(common) + 1;
            uint64_t right = jmin >= 64 ? 0 : ~((uint64_t(1) << jmin) - 1);
            if ((row_[lo] & right) & ~row_[hi]) return false;
        }
    return true;
}

bool Board::le_closed() const {
    // rows k < i: each cell of row i strictly left of some cell of row k
    // must itself lie in row k
    for (int k = 0; k < m_; ++k) {
        if (!row_[k]) continue;
        int top = 63 - std::countl_zero(row_[k]);  // 0-based column of rightmost cell
        uint64_t strictly_left = (uint64_t(1) << top) - 1;
        for (int i = k + 1; i < m_; ++i)
            if ((row_[i] & strictly_left) & ~row_[k]) return false;
    }
    return true;
}

bool Board::rows_nested() const {
    for (int a = 0; a < m_; ++a)
        for (int b = a + 1; b < m_; ++b) {
            bool ab = (row_[a] & ~row_[b]) == 0;
            bool ba = (row_[b] & ~row_[a]) == 0;
            if (!ab && !ba) return false;
        }
    return true;
}

std::optional<SkewShape> Board::as_skew() const {
    if (m_ != n_) return std::nullopt;
    // each nonempty row must be a contiguous interval [lo_i, hi_i]
    std::vector<int> lo(n_ + 1, 0), hi(n_ + 1, 0);
    for (int i = 1; i <= n_; ++i) {
        uint64_t r = row_[i - 1];
        if (!r) continue;
        int a = std::countr_zero(r) + 1;
        int b = 64 - std::countl_zero(r);
        uint64_t interval = ((b == 64 ? ~uint64_t(0) : (uint64_t(1) << b) - 1)) &
                            ~((uint64_t(1) << (a - 1)) - 1);
        if (r != interval) return std::nullopt;
        lo[i] = a;
        hi[i] = b;
    }
    // assign lambda_i = hi_i, mu_i = lo_i - 1 on nonempty rows; empty rows get
    // lambda_i = mu_i = v picked between the neighbouring constraints
    std::vector<int> lam(n_ + 1, 0), mu(n_ + 1, 0);
    int next_lam = 0;  // lambda of the next nonempty row below, 0 if none
    for (int i = n_; i >= 1; --i) {
        if (hi[i]) {
            lam[i] = hi[i];
            mu[i] = lo[i] - 1;
            next_lam = hi[i];
        } else {
            lam[i] = mu[i] = next_lam;
        }
    }
    for (int i = 1; i < n_; ++i) {
        if (lam[i] < lam[i + 1] || mu[i] < mu[i + 1]) return std::nullopt;
    }
    for (int i = 1; i <= n_; ++i)
        if (mu[i] > lam[i]) return std::nullopt;
    SkewShape s;
    s.n = n_;
    s.lambda.assign(lam.begin() + 1, lam.end());
    s.mu.assign(mu.begin() + 1, mu.end());
    while (!s.lambda.empty() && s.lambda.back() == 0) s.lambda.pop_back();
    while (!s.mu.empty() && s.mu.back() == 0) s.mu.pop_back();
    return s;
}

Board::Profiles Board::profiles() const {
    Profiles p;
    p.row_in.resize(m_);
    p.row_out.resize(m_);
    p.col_in.resize(n_);
    p.col_out.resize(n_);
    for (int i = 1; i <= m_; ++i) {
        p.row_in[i - 1] = row_count(i);
        p.row_out[i - 1] = n_ - p.row_in[i - 1];
    }
    for (int j = 1; j <= n_; ++j) {
        p.col_in[j - 1] = col_count(j);
        p.col_out[j - 1] = m_ - p.col_in[j - 1];
    }
    return p;
}

Board Board::normalized() const {
    // alternately sort rows and columns by their characteristic words; if the
    // alternation cycles, the lexicographically least board on the cycle is
    // the canonical representative (keeps the map idempotent)
    auto row_sorted = [](const Board& b) {
        Board r = b;
        std::sort(r.row_.begin(), r.row_.end(), std::greater<>());
        return r;
    };
    auto col_sorted = [&](const Board& b) {
        Board t = b.transposed();
        std::sort(t.row_.begin(), t.row_.end(), std::greater<>());
        return t.transposed();
    };
    std::vector<Board> seen;
    Board cur = *this;
    while (true) {
        Board next = col_sorted(row_sorted(cur));
        if (next == cur) return cur;
        if (auto it = std::find(seen.begin(), seen.end(), next); it != seen.end()) {
            return *std::min_element(it, seen.end(), [](const Board& a, const Board& b) {
                return a.row_ < b.row_;
            });
        }
        seen.push_back(next);
        cur = next;
    }
}

uint64_t Board::normal_hash() const {
    Board n = normalized();
    uint64_t h = 1469598103934665603ULL;  // FNV-1a
    auto mix = [&h](uint64_t v) {
        for (int b = 0; b < 8; ++b) {
            h ^= (v >> (8 * b)) & 0xff;
            h *= 1099511628211ULL;
        }
    };
    mix(static_cast<uint64_t>(n.m_));
    mix(static_cast<uint64_t>(n.n_));
    for (uint64_t r : n.row_) mix(r);
    return h;
}

std::string Board::format() const {
    std::ostringstream out;
    out << "coords:" << m_ << "," << n_ << ":";
    bool first = true;
    for (const Cell& c : cells()) {
        if (!first) out << ";";
        out << "(" << c.i << "," << c.j << ")";
        first = false;
    }
    return out.str();
}

namespace {

std::string strip_ws(std::string_view s) {
    std::string out;
    for (char c : s)
        if (!isspace(static_cast<unsigned char>(c))) out += c;
    return out;
}

int parse_int(std::string_view s, const char* what) {
    int v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw ParseError(std::string("board spec: bad integer in ") + what);
    return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> parts;
    size_t pos = 0;
    while (true) {
        size_t nxt = s.find(sep, pos);
        if (nxt == std::string_view::npos) {
            parts.push_back(s.substr(pos));
            return parts;
        }
        parts.push_back(s.substr(pos, nxt - pos));
        pos = nxt + 1;
    }
}

std::vector<int> parse_int_list(std::string_view s, const char* what) {
    std::vector<int> out;
    if (s.empty()) return out;
    for (auto part : split(s, ',')) out.push_back(parse_int(part, what));
    return out;
}

}  // namespace

Board Board::parse(std::string_view raw) {
    std::string clean = strip_ws(raw);
    auto parts = split(clean, ':');
    if (parts.empty() || parts[0].empty()) throw ParseError("board spec: empty");
    bool complement = false;
    if (parts.size() >= 2 && parts.back() == "complement") {
        complement = true;
        parts.pop_back();
    }
    std::string_view kind = parts[0];
    Board b;
    if (kind == "coords") {
        if (parts.size() != 2 && parts.size() != 3)
            throw ParseError("board spec: coords:m,n:(i,j);... expected");
        auto dims = parse_int_list(parts[1], "dimensions");
        if (dims.size() != 2) throw ParseError("board spec: coords needs m,n");
        std::vector<Cell> cs;
        if (parts.size() == 3 && !parts[2].empty()) {
            for (auto tok : split(parts[2], ';')) {
                if (tok.size() < 5 || tok.front() != '(' || tok.back() != ')')
                    throw ParseError("board spec: cell must look like (i,j)");
                auto ij = parse_int_list(tok.substr(1, tok.size() - 2), "cell");
                if (ij.size() != 2) throw ParseError("board spec: cell must look like (i,j)");
                cs.push_back({ij[0], ij[1]});
            }
        }
        try {
            b = Board(dims[0], dims[1], cs);
        } catch (const std::invalid_argument& e) {
            throw ParseError(std::string("board spec: ") + e.what());
        }
    } else if (kind == "lambda" || kind == "skew") {
        if (parts.size() != 3) throw ParseError("board spec: lambda:n:parts expected");
        int n = parse_int(parts[1], "n");
        auto lm = split(parts[2], '/');
        if (kind == "lambda" && lm.size() != 1)
            throw ParseError("board spec: lambda takes no inner shape");
        if (lm.size() > 2) throw ParseError("board spec: at most one / in shape");
        std::vector<int> lambda = parse_int_list(lm[0], "lambda");
        std::vector<int> mu =
            lm.size() == 2 ? parse_int_list(lm[1], "mu") : std::vector<int>{};
        try {
            b = Board::skew_shape(lambda, mu, n);
        } catch (const std::invalid_argument& e) {
            throw ParseError(std::string("board spec: ") + e.what());
        }
    } else if (kind == "rothe" || kind == "hull") {
        if (parts.size() != 2) throw ParseError("board spec: rothe:WORD expected");
        Perm w = Perm::parse(parts[1]);
        b = kind == "rothe" ? rothe_diagram(w) : left_hull(w);
    } else {
        throw ParseError("board spec: unknown kind '" + std::string(kind) + "'");
    }
    return complement ? b.complement() : b;
}

}  // namespace qmr
