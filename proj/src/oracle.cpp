#include "qmatrank/oracle.hpp"

#include <array>
#include <cstring>
#include <unordered_map>
#include <vector>

#include "qmatrank/laurent.hpp"

namespace qmr {

BigInt oracle_state_bound(int m, int n, int r, long long q) {
    int kmax = std::min({m, n, r});
    BigInt total = 0;
    BigInt Q(q);
    for (int k = 0; k <= kmax; ++k) {
        // [n choose k]_q = prod_{i=0..k-1} (q^{n-i} - 1) / (q^{i+1} - 1)
        BigInt num = 1, den = 1;
        for (int i = 0; i < k; ++i) {
            num *= big_pow(Q, n - i) - 1;
            den *= big_pow(Q, i + 1) - 1;
        }
        total += num / den;
    }
    return total;
}

namespace {

constexpr int kMaxDim = 8;    // basis rows per state
constexpr int kMaxCols = 16;  // columns

using Row = std::array<uint8_t, kMaxCols>;  // field element indices

struct StateKey {
    std::array<uint64_t, kMaxDim> packed{};
    uint8_t dim = 0;
    bool operator==(const StateKey& o) const {
        return dim == o.dim &&
               std::memcmp(packed.data(), o.packed.data(), sizeof(uint64_t) * dim) == 0;
    }
};

struct StateKeyHash {
    size_t operator()(const StateKey& k) const {
        uint64_t h = 1469598103934665603ULL;
        for (int i = 0; i < k.dim; ++i) {
            h ^= k.packed[i];
            h *= 1099511628211ULL;
        }
        h ^= k.dim;
        h *= 1099511628211ULL;
        return static_cast<size_t>(h);
    }
};

struct Basis {
    int dim = 0;
    int pivot[kMaxDim];  // 0-based pivot column per row, strictly increasing
    Row rows[kMaxDim];
};

uint64_t pack_row(const Row& r, int n, int bits) {
    uint64_t v = 0;
    for (int j = n - 1; j >= 0; --j) v = (v << bits) | r[j];
    return v;
}

void unpack_row(uint64_t v, int n, int bits, Row& r) {
    uint64_t mask = (uint64_t(1) << bits) - 1;
    for (int j = 0; j < n; ++j) {
        r[j] = static_cast<uint8_t>(v & mask);
        v >>= bits;
    }
}

StateKey pack_state(const Basis& b, int n, int bits) {
    StateKey k;
    k.dim = static_cast<uint8_t>(b.dim);
    for (int i = 0; i < b.dim; ++i) k.packed[i] = pack_row(b.rows[i], n, bits);
    return k;
}

void unpack_state(const StateKey& k, int n, int bits, Basis& b) {
    b.dim = k.dim;
    for (int i = 0; i < k.dim; ++i) unpack_row(k.packed[i], n, bits, b.rows[i]);
    for (int i = 0; i < k.dim; ++i) {
        b.pivot[i] = -1;
        for (int j = 0; j < n; ++j)
            if (b.rows[i][j]) {
                b.pivot[i] = j;
                break;
            }
    }
}

// fast field ops over tables
struct Ops {
    const uint16_t* add;
    const uint16_t* mul;
    const uint16_t* neg;
    const uint16_t* inv;
    long long q;
    uint8_t addf(uint8_t a, uint8_t b) const { return static_cast<uint8_t>(add[a * q + b]); }
    uint8_t mulf(uint8_t a, uint8_t b) const { return static_cast<uint8_t>(mul[a * q + b]); }
};

// reduce v against the echelon basis in place; true if v becomes zero
bool reduce_vec(const Basis& b, const Ops& ops, int n, Row& v) {
    for (int i = 0; i < b.dim; ++i) {
        int p = b.pivot[i];
        if (v[p] == 0) continue;
        // v -= v[p] * row_i  (rows are normalized to pivot 1)
        uint8_t f = v[p];
        for (int j = p; j < n; ++j) {
            uint8_t prod = ops.mulf(f, b.rows[i][j]);
            v[j] = ops.addf(v[j], static_cast<uint8_t>(ops.neg[prod]));
        }
    }
    for (int j = 0; j < n; ++j)
        if (v[j]) return false;
    return true;
}

// insert a vector known to be independent; keeps reduced echelon form
void insert_vec(Basis& b, const Ops& ops, int n, Row v) {
    for (int i = 0; i < b.dim; ++i) {
        int p = b.pivot[i];
        if (v[p] == 0) continue;
        uint8_t f = v[p];
        for (int j = p; j < n; ++j)
            v[j] = ops.addf(v[j], static_cast<uint8_t>(ops.neg[ops.mulf(f, b.rows[i][j])]));
    }
    int piv = -1;
    for (int j = 0; j < n; ++j)
        if (v[j]) {
            piv = j;
            break;
        }
    // normalize pivot to 1
    uint8_t s = static_cast<uint8_t>(ops.inv[v[piv]]);
    for (int j = piv; j < n; ++j) v[j] = ops.mulf(v[j], s);
    // back-eliminate the new pivot from existing rows
    for (int i = 0; i < b.dim; ++i) {
        uint8_t f = b.rows[i][piv];
        if (!f) continue;
        for (int j = piv; j < n; ++j)
            b.rows[i][j] = ops.addf(b.rows[i][j], static_cast<uint8_t>(ops.neg[ops.mulf(f, v[j])]));
    }
    // insert keeping pivots increasing
    int pos = b.dim;
    while (pos > 0 && b.pivot[pos - 1] > piv) {
        b.rows[pos] = b.rows[pos - 1];
        b.pivot[pos] = b.pivot[pos - 1];
        --pos;
    }
    b.rows[pos] = v;
    b.pivot[pos] = piv;
    ++b.dim;
}

}  // namespace

bool oracle_feasible(const Board& s, int r, long long q,
                     const OracleLimits& limits) {
    const int m = s.rows(), n = s.cols();
    if (r <= 0 || r > std::min(m, n)) return true;  // trivial answers
    long long p = 0;
    int k = 0;
    if (!is_prime_power(q, &p, &k) || q > 64) return false;
    const int bits = q <= 16 ? 4 : 8;
    if ((bits == 4 && n > 11) || (bits == 8 && n > 8) || r > kMaxDim || n > kMaxCols)
        return false;
    return oracle_state_bound(m, n, r, q) <= limits.max_states;
}

BigInt count_rank_dp(const Board& s, int r, const Field& f, const OracleLimits& limits) {
    const int m = s.rows(), n = s.cols();
    if (r < 0) return 0;
    if (r == 0) return 1;
    if (r > std::min(m, n)) return 0;
    const long long q = f.q();
    const int bits = q <= 16 ? 4 : 8;
    if (!f.has_tables() || q > 64)
        throw OracleInfeasible("oracle: fields beyond q=64 are not supported by the DP");
    if ((bits == 4 && n > 11) || (bits == 8 && n > 8) || r > kMaxDim || n > kMaxCols)
        throw OracleInfeasible("oracle: board shape exceeds the packed-state caps");
    if (oracle_state_bound(m, n, r, q) > limits.max_states)
        throw OracleInfeasible("oracle: state bound exceeds the budget");

    Ops ops{f.add_table(), f.mul_table(), f.neg_table(), f.inv_table(), q};

    std::vector<BigInt> qpow(n + 1);
    qpow[0] = 1;
    for (int i = 1; i <= n; ++i) qpow[i] = qpow[i - 1] * q;

    using Map = std::unordered_map<StateKey, BigInt, StateKeyHash>;
    Map cur;
    cur.emplace(StateKey{}, BigInt(1));

    Basis basis, ext;
    for (int i = 1; i <= m; ++i) {
        const uint64_t zmask = s.row_mask(i);  // forbidden columns of this row
        std::vector<int> free_cols, zcols;
        for (int j = 0; j < n; ++j)
            ((zmask >> j) & 1) ? zcols.push_back(j) : free_cols.push_back(j);
        const int rows_left_after = m - i;

        Map next;
        next.reserve(cur.size() * 2);
        for (const auto& [key, cnt] : cur) {
            const int k = key.dim;
            if (k + rows_left_after + 1 < r) continue;  // cannot reach rank r
            unpack_state(key, n, bits, basis);

            // W = span(basis) restricted to vectors vanishing on the zero set:
            // kernel of the basis columns over zmask, lifted back to vectors
            // (d = dim W), then extended inside the free coordinate subspace
            // by unit vectors to get rank-raising directions.
            ext.dim = 0;
            int d = 0;
            {
                // matrix k x |zcols| with row ops tracked on full vectors
                Row work[kMaxDim];
                Row full[kMaxDim];
                int nrows = 0;
                for (int a = 0; a < k; ++a) {
                    Row rz{};
                    for (size_t z = 0; z < zcols.size(); ++z) rz[z] = basis.rows[a][zcols[z]];
                    work[nrows] = rz;
                    full[nrows] = basis.rows[a];
                    ++nrows;
                }
                // gaussian elimination on work, mirrored on full
                int rank = 0;
                for (size_t col = 0; col < zcols.size() && rank < nrows; ++col) {
                    int sel = -1;
                    for (int a = rank; a < nrows; ++a)
                        if (work[a][col]) {
                            sel = a;
                            break;
                        }
                    if (sel < 0) continue;
                    std::swap(work[rank], work[sel]);
                    std::swap(full[rank], full[sel]);
                    uint8_t piv_inv = static_cast<uint8_t>(ops.inv[work[rank][col]]);
                    for (size_t j = col; j < zcols.size(); ++j)
                        work[rank][j] = ops.mulf(work[rank][j], piv_inv);
                    for (int j = 0; j < n; ++j) full[rank][j] = ops.mulf(full[rank][j], piv_inv);
                    for (int a = 0; a < nrows; ++a) {
                        if (a == rank || !work[a][col]) continue;
                        uint8_t fct = work[a][col];
                        for (size_t j = col; j < zcols.size(); ++j)
                            work[a][j] = ops.addf(
                                work[a][j], static_cast<uint8_t>(ops.neg[ops.mulf(fct, work[rank][j])]));
                        for (int j = 0; j < n; ++j)
                            full[a][j] = ops.addf(
                                full[a][j], static_cast<uint8_t>(ops.neg[ops.mulf(fct, full[rank][j])]));
                    }
                    ++rank;
                }
                d = k - rank;  // dim of the vanishing subspace W inside span
                // rows rank..nrows-1 of `full` span W; use them to seed the
                // extension basis so unit-vector candidates skip W
                for (int a = rank; a < nrows; ++a) {
                    Row v = full[a];
                    // reduce against ext to keep it an echelon basis
                    bool zero = true;
                    for (int t = 0; t < ext.dim; ++t) {
                        int p = ext.pivot[t];
                        if (!v[p]) continue;
                        uint8_t fct = v[p];
                        for (int j = 0; j < n; ++j)
                            v[j] = ops.addf(
                                v[j], static_cast<uint8_t>(ops.neg[ops.mulf(fct, ext.rows[t][j])]));
                    }
                    for (int j = 0; j < n; ++j)
                        if (v[j]) {
                            zero = false;
                            break;
                        }
                    if (!zero) insert_vec(ext, ops, n, v);
                }
            }

            // stay transitions: q^d support-respecting rows already in span
            if (k + rows_left_after >= r) {
                auto it = next.find(key);
                if (it == next.end())
                    next.emplace(key, cnt * qpow[d]);
                else
                    it->second += cnt * qpow[d];
            }

            if (k >= r) continue;  // no rank-raising transitions wanted

            // complement directions: unit vectors on free columns independent
            // of W (tracked in ext, which currently spans W)
            Row dirs[kMaxCols];
            int t = 0;
            for (int j : free_cols) {
                Row v{};
                v[j] = 1;
                // reduce against ext
                Row red = v;
                for (int a = 0; a < ext.dim; ++a) {
                    int p = ext.pivot[a];
                    if (!red[p]) continue;
                    uint8_t fct = red[p];
                    for (int jj = 0; jj < n; ++jj)
                        red[jj] = ops.addf(
                            red[jj], static_cast<uint8_t>(ops.neg[ops.mulf(fct, ext.rows[a][jj])]));
                }
                bool zero = true;
                for (int jj = 0; jj < n; ++jj)
                    if (red[jj]) {
                        zero = false;
                        break;
                    }
                if (zero) continue;
                insert_vec(ext, ops, n, red);
                dirs[t++] = v;  // keep the plain unit vector; any lift works
            }

            // enumerate nonzero combinations of the t directions; each one is
            // a support-respecting vector outside span, and q^d rows share its
            // extension
            if (t == 0) continue;
            BigInt weight = cnt * qpow[d];
            std::array<int, kMaxCols> digits{};
            Row comb{};
            while (true) {
                // increment base-q counter
                int pos = 0;
                while (pos < t) {
                    if (++digits[pos] < q) break;
                    digits[pos] = 0;
                    ++pos;
                }
                if (pos == t) break;
                // build the combination
                comb.fill(0);
                for (int a = 0; a < t; ++a) {
                    if (!digits[a]) continue;
                    uint8_t fct = static_cast<uint8_t>(digits[a]);
                    for (int j = 0; j < n; ++j)
                        comb[j] = ops.addf(comb[j], ops.mulf(fct, dirs[a][j]));
                }
                Row red = comb;
                bool zero = reduce_vec(basis, ops, n, red);
                if (zero) continue;  // unreachable: directions avoid the span
                Basis nb = basis;
                insert_vec(nb, ops, n, red);
                StateKey nk = pack_state(nb, n, bits);
                auto it = next.find(nk);
                if (it == next.end())
                    next.emplace(nk, weight);
                else
                    it->second += weight;
            }
            if (static_cast<long long>(next.size()) > limits.max_states)
                throw OracleInfeasible("oracle: live states exceeded the budget");
        }
        cur = std::move(next);
    }

    BigInt total = 0;
    for (const auto& [key, cnt] : cur)
        if (key.dim == r) total += cnt;
    return total;
}

BigInt count_rank_naive(const Board& s, int r, const Field& f) {
    const int m = s.rows(), n = s.cols();
    if (r < 0) return 0;
    std::vector<Cell> free;
    for (int i = 1; i <= m; ++i)
        for (int j = 1; j <= n; ++j)
            if (!s.contains(i, j)) free.push_back({i, j});
    if (free.size() > 12) throw OracleInfeasible("naive oracle: more than 12 free entries");
    const long long q = f.q();
    if (q > 255) throw OracleInfeasible("naive oracle: q exceeds byte-sized entries");

    std::vector<uint8_t> mat(m * n, 0);
    std::vector<int> digits(free.size(), 0);
    auto rank_of = [&]() {
        // gaussian elimination on a copy
        std::vector<uint8_t> a = mat;
        int rank = 0;
        for (int col = 0; col < n && rank < m; ++col) {
            int sel = -1;
            for (int row = rank; row < m; ++row)
                if (a[row * n + col]) {
                    sel = row;
                    break;
                }
            if (sel < 0) continue;
            for (int j = 0; j < n; ++j) std::swap(a[rank * n + j], a[sel * n + j]);
            long long piv_inv = f.inv(a[rank * n + col]);
            for (int j = col; j < n; ++j)
                a[rank * n + j] = static_cast<uint8_t>(f.mul(a[rank * n + j], piv_inv));
            for (int row = rank + 1; row < m; ++row) {
                uint8_t fct = a[row * n + col];
                if (!fct) continue;
                for (int j = col; j < n; ++j)
                    a[row * n + j] = static_cast<uint8_t>(
                        f.sub(a[row * n + j], f.mul(fct, a[rank * n + j])));
            }
            ++rank;
        }
        return rank;
    };

    BigInt count = 0;
    while (true) {
        if (rank_of() == r) ++count;
        size_t pos = 0;
        while (pos < free.size()) {
            if (++digits[pos] < q) break;
            digits[pos] = 0;
            ++pos;
        }
        for (size_t u = 0; u <= pos && u < free.size(); ++u) {
            const Cell& c = free[u];
            mat[(c.i - 1) * n + (c.j - 1)] = static_cast<uint8_t>(digits[u]);
        }
        if (pos == free.size()) break;
    }
    return count;
}

}  // namespace qmr
