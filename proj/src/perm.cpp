#include "qmatrank/perm.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace qmr {

Perm::Perm(std::vector<int> word) : w_(std::move(word)) {
    std::vector<bool> seen(w_.size() + 1, false);
    for (int v : w_) {
        if (v < 1 || v > static_cast<int>(w_.size()) || seen[v])
            throw std::invalid_argument("Perm: not a permutation of 1..n");
        seen[v] = true;
    }
}

Perm Perm::identity(int n) {
    std::vector<int> w(n);
    std::iota(w.begin(), w.end(), 1);
    return Perm(std::move(w));
}

Perm Perm::parse(std::string_view text) {
    std::string clean;
    for (char c : text)
        if (!isspace(static_cast<unsigned char>(c))) clean += c;
    if (clean.empty()) throw ParseError("permutation: empty");
    std::vector<int> w;
    if (clean.find(',') != std::string::npos) {
        size_t pos = 0;
        while (pos <= clean.size()) {
            size_t nxt = clean.find(',', pos);
            std::string tok = clean.substr(pos, nxt == std::string::npos ? nxt : nxt - pos);
            try {
                w.push_back(std::stoi(tok));
            } catch (const std::exception&) {
                throw ParseError("permutation: bad entry '" + tok + "'");
            }
            if (nxt == std::string::npos) break;
            pos = nxt + 1;
        }
    } else {
        for (char c : clean) {
            if (c < '1' || c > '9') throw ParseError("permutation: digits 1-9 expected");
            w.push_back(c - '0');
        }
    }
    try {
        return Perm(std::move(w));
    } catch (const std::invalid_argument& e) {
        throw ParseError(std::string("permutation: ") + e.what());
    }
}

Perm Perm::inverse() const {
    std::vector<int> v(w_.size());
    for (int i = 1; i <= n(); ++i) v[w_[i - 1] - 1] = i;
    return Perm(std::move(v));
}

Perm Perm::reverse_complement() const {
    std::vector<int> v(w_.size());
    for (int i = 1; i <= n(); ++i) v[i - 1] = n() + 1 - w_[n() - i];
    return Perm(std::move(v));
}

int Perm::inversions() const {
    int c = 0;
    for (int i = 0; i < n(); ++i)
        for (int j = i + 1; j < n(); ++j)
            if (w_[i] > w_[j]) ++c;
    return c;
}

bool Perm::contains(const Perm& pattern) const {
    const int k = pattern.n();
    if (k > n()) return false;
    if (k == 0) return true;
    // backtracking over positions; prefix kept order-isomorphic to the pattern
    std::vector<int> pos;
    pos.reserve(k);
    auto extends = [&](int cand) {
        int d = static_cast<int>(pos.size());
        for (int t = 0; t < d; ++t) {
            bool lt_pat = pattern.w_[t] < pattern.w_[d];
            bool lt_here = w_[pos[t]] < w_[cand];
            if (lt_pat != lt_here) return false;
        }
        return true;
    };
    // iterative DFS
    int start = 0;
    while (true) {
        int d = static_cast<int>(pos.size());
        bool advanced = false;
        for (int cand = start; cand <= n() - (k - d); ++cand) {
            if (extends(cand)) {
                pos.push_back(cand);
                if (static_cast<int>(pos.size()) == k) return true;
                start = cand + 1;
                advanced = true;
                break;
            }
        }
        if (!advanced) {
            if (pos.empty()) return false;
            start = pos.back() + 1;
            pos.pop_back();
        }
    }
}

bool Perm::avoids_all(const std::vector<Perm>& patterns) const {
    for (const Perm& p : patterns)
        if (contains(p)) return false;
    return true;
}

std::vector<int> Perm::ltr_max_values() const {
    std::vector<int> out;
    int best = 0;
    for (int v : w_)
        if (v > best) {
            best = v;
            out.push_back(v);
        }
    return out;
}

Perm Perm::pattern_at(int from, int to) const {
    std::vector<int> vals(w_.begin() + (from - 1), w_.begin() + to);
    std::vector<int> sorted = vals;
    std::sort(sorted.begin(), sorted.end());
    for (auto& v : vals)
        v = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), v) - sorted.begin()) + 1;
    return Perm(std::move(vals));
}

std::string Perm::to_string() const {
    std::ostringstream out;
    if (n() > 9) {
        for (int i = 0; i < n(); ++i) out << (i ? "," : "") << w_[i];
    } else {
        for (int v : w_) out << v;
    }
    return out.str();
}

std::vector<Perm> all_perms(int n) {
    std::vector<int> w(n);
    std::iota(w.begin(), w.end(), 1);
    std::vector<Perm> out;
    do {
        out.push_back(Perm(w));
    } while (std::next_permutation(w.begin(), w.end()));
    return out;
}

Board rothe_diagram(const Perm& w) {
    const int n = w.n();
    Perm wi = w.inverse();
    Board b(n, n);
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            if (w(i) > j && wi(j) > i) b = b.with_cell(i, j);
    return b;
}

Board left_hull(const Perm& w) {
    const int n = w.n();
    Board b(n, n);
    for (int i = 1; i <= n; ++i)
        for (int j = i; j <= n; ++j) {
            if (w(i) > w(j)) continue;
            for (int r = i; r <= j; ++r)
                for (int c = w(i); c <= w(j); ++c)
                    if (!b.contains(r, c)) b = b.with_cell(r, c);
        }
    return b;
}

std::optional<SvDecomposition> sv_decompose(const Perm& w) {
    static const Perm p2143(std::vector<int>{2, 1, 4, 3});
    const int n = w.n();
    for (int k = 0; k <= n; ++k) {
        if (k > 0 && w(k) > k) continue;
        bool prefix_ok = true;
        for (int i = 1; i <= k; ++i)
            if (w(i) > k) {
                prefix_ok = false;
                break;
            }
        if (!prefix_ok) continue;
        Perm a = k == 0 ? Perm() : w.pattern_at(1, k);
        Perm b = k == n ? Perm() : w.pattern_at(k + 1, n);
        if (a.contains(p2143) || b.contains(p2143)) continue;
        return SvDecomposition{k, a, b};
    }
    return std::nullopt;
}

bool is_vexillary(const Perm& w) {
    static const Perm p2143(std::vector<int>{2, 1, 4, 3});
    return !w.contains(p2143);
}

const std::vector<Perm>& sv_obstructions() {
    static const std::vector<Perm> pats = [] {
        std::vector<Perm> v;
        for (const char* s :
             {"24153", "25143", "31524", "31542", "32514", "32541", "42153", "52143"})
            v.push_back(Perm::parse(s));
        v.push_back(Perm::parse("214365"));
        return v;
    }();
    return pats;
}

const std::vector<Perm>& hull_obstructions() {
    static const std::vector<Perm> pats = [] {
        std::vector<Perm> v;
        for (const char* s : {"1324", "24153", "31524", "426153"}) v.push_back(Perm::parse(s));
        return v;
    }();
    return pats;
}

bool is_skew_vexillary(const Perm& w) { return w.avoids_all(sv_obstructions()); }

bool is_decomposable(const Perm& w) {
    int seen_max = 0;
    for (int k = 1; k < w.n(); ++k) {
        seen_max = std::max(seen_max, w(k));
        if (seen_max == k) return true;
    }
    return false;
}

namespace {

// decreasing rearrangement of the Rothe diagram row lengths; for a
// 2143-avoiding permutation this is the shape of the rearranged diagram
std::vector<int> sorted_code(const Perm& w) {
    std::vector<int> code;
    for (int i = 1; i <= w.n(); ++i) {
        int c = 0;
        for (int j = i + 1; j <= w.n(); ++j)
            if (w(j) < w(i)) ++c;
        if (c) code.push_back(c);
    }
    std::sort(code.rbegin(), code.rend());
    return code;
}

}  // namespace

SkewShape sv_shape(const Perm& w) {
    auto dec = sv_decompose(w);
    if (!dec) throw std::invalid_argument("sv_shape: permutation is not skew-vexillary");
    const int n = w.n();
    const int k = dec->k;
    // the block containing value 1 rearranges to a straight shape in the top
    // left; the complementary block, rotated half a turn, fills the bottom
    // right; the complement of the union is the skew shape
    std::vector<int> alpha = dec->k == 0 ? std::vector<int>{} : sorted_code(dec->prefix);
    std::vector<int> beta = dec->k == n ? std::vector<int>{} : sorted_code(dec->suffix);
    beta.resize(n - k, 0);  // pad; rotated block occupies rows k+1..n
    SkewShape s;
    s.n = n;
    s.lambda.assign(n, 0);
    for (int i = 1; i <= k; ++i) s.lambda[i - 1] = n;
    for (int r = 1; r <= n - k; ++r) s.lambda[k + r - 1] = n - beta[n - k - r];
    s.mu = alpha;
    while (!s.lambda.empty() && s.lambda.back() == 0) s.lambda.pop_back();
    while (!s.mu.empty() && s.mu.back() == 0) s.mu.pop_back();
    return s;
}

Perm construct_v(const Perm& w) {
    auto dec = sv_decompose(w);
    if (!dec) throw std::invalid_argument("construct_v: permutation is not skew-vexillary");
    SkewShape s = sv_shape(w);
    const int n = w.n();
    const int k = dec->k;
    std::vector<int> v(n + 1, 0);
    std::vector<bool> used(n + 1, false);
    for (int i = 1; i <= k; ++i) {
        int got = 0;
        for (int c = s.muu(i) + 1; c <= n; ++c)
            if (!used[c]) {
                got = c;
                break;
            }
        if (!got) throw std::logic_error("construct_v: min step failed");
        v[i] = got;
        used[got] = true;
    }
    for (int i = n; i > k; --i) {
        int got = 0;
        for (int c = s.lam(i); c >= 1; --c)
            if (!used[c]) {
                got = c;
                break;
            }
        if (!got) throw std::logic_error("construct_v: max step failed");
        v[i] = got;
        used[got] = true;
    }
    return Perm(std::vector<int>(v.begin() + 1, v.end()));
}

std::vector<std::pair<Cell, Cell>> phi_pairs(const Perm& w) {
    static const Perm p1324(std::vector<int>{1, 3, 2, 4});
    if (w.contains(p1324)) throw std::invalid_argument("phi_pairs: w must avoid 1324");
    Perm wi = w.inverse();
    std::vector<std::pair<Cell, Cell>> out;
    for (const Cell& c : rothe_diagram(w).cells()) {
        bool plain = true;
        for (int k = 1; k < c.i && plain; ++k)
            if (w(k) < c.j) plain = false;
        out.push_back({c, plain ? c : Cell{wi(c.j), w(c.i)}});
    }
    return out;
}

bool bruhat_leq(const Perm& u, const Perm& w) {
    if (u.n() != w.n()) throw std::invalid_argument("bruhat_leq: sizes differ");
    const int n = u.n();
    // u <= w iff every northwest rectangle holds at least as many u-entries
    std::vector<std::vector<int>> ru(n + 1, std::vector<int>(n + 1, 0));
    auto rw = ru;
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) {
            ru[i][j] = ru[i - 1][j] + ru[i][j - 1] - ru[i - 1][j - 1] + (u(i) == j);
            rw[i][j] = rw[i - 1][j] + rw[i][j - 1] - rw[i - 1][j - 1] + (w(i) == j);
        }
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            if (ru[i][j] < rw[i][j]) return false;
    return true;
}

Laurent poincare_upper(const Perm& w) {
    if (w.n() > 8) throw std::invalid_argument("poincare_upper: n <= 8");
    Laurent p;
    for (const Perm& u : all_perms(w.n()))
        if (bruhat_leq(w, u)) p += Laurent::monomial(1, u.inversions());
    return p;
}

}  // namespace qmr
