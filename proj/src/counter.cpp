#include "qmatrank/counter.hpp"

#include <algorithm>
#include <fstream>
#include <future>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "qmatrank/rooks.hpp"

namespace qmr {

const char* provenance_name(Provenance p) {
    switch (p) {
        case Provenance::Formula: return "formula";
        case Provenance::Reduction: return "reduction";
        case Provenance::OracleInterpolation: return "oracle+interpolation";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// closed forms

Laurent count_rank1(const Board& s) {
    const int m = s.rows(), n = s.cols();
    if (m > 20 && n > 20)
        throw std::invalid_argument("count_rank1: both sides exceed 20 rows");
    const Board& b = (m <= 20) ? s : s.transposed();
    const int rows = b.rows(), cols = b.cols();

    // column masks over rows: bit i-1 set when (i, j) is a board cell
    std::vector<uint64_t> colmask(cols, 0);
    for (int i = 1; i <= rows; ++i)
        for (int j = 1; j <= cols; ++j)
            if (b.contains(i, j)) colmask[j - 1] |= uint64_t{1} << (i - 1);

    // bucket subsets by (#all-clear columns, subset size)
    std::vector<std::vector<long long>> bucket(
        cols + 1, std::vector<long long>(rows + 1, 0));
    const uint64_t top = uint64_t{1} << rows;
    for (uint64_t t = 1; t < top; ++t) {
        int clear = 0;
        for (int j = 0; j < cols; ++j)
            if ((colmask[j] & t) == 0) ++clear;
        ++bucket[clear][__builtin_popcountll(t)];
    }

    Laurent total;
    for (int a = 0; a <= cols; ++a) {
        Laurent inner;  // sum over subset sizes of cnt * (q-1)^{size-1}
        for (int t = 1; t <= rows; ++t) {
            long long cnt = bucket[a][t];
            if (cnt == 0) continue;
            Laurent qm1 = Laurent::q() - Laurent::monomial(1, 0);
            inner += qm1.pow(t - 1) * Laurent::monomial(BigInt(cnt), 0);
        }
        if (inner.is_zero()) continue;
        total += (Laurent::monomial(1, a) - Laurent::monomial(1, 0)) * inner;
    }
    return total;
}

Laurent count_rank1_diagonal(int n) {
    if (n < 1) throw std::invalid_argument("count_rank1_diagonal: n < 1");
    Laurent two_q_minus_1 = Laurent::monomial(2, 1) - Laurent::monomial(1, 0);
    Laurent num = two_q_minus_1.pow(n) - Laurent::monomial(2, n)
                  + Laurent::monomial(1, 0);
    auto quo = num.divided_by(Laurent::q() - Laurent::monomial(1, 0));
    if (!quo) throw std::logic_error("count_rank1_diagonal: inexact division");
    return *quo;
}

Laurent count_invertible(int n) {
    if (n < 0) throw std::invalid_argument("count_invertible: n < 0");
    Laurent out = Laurent::monomial(1, 0);
    for (int i = 0; i < n; ++i)
        out = out * (Laurent::monomial(1, n) - Laurent::monomial(1, i));
    return out;
}

Laurent count_support_inside(const Board& b, int r) {
    if (!b.ne_closed())
        throw std::invalid_argument("count_support_inside: board not closed");
    if (r < 0 || r > std::min(b.rows(), b.cols())) return Laurent{};
    Laurent rp = rook_poly(b, r, RookConvention::NE).subst_qinv();
    Laurent qm1 = Laurent::q() - Laurent::monomial(1, 0);
    Laurent out = qm1.pow(r) * rp.shifted(b.cell_count() - r);
    if (!out.is_polynomial())
        throw std::logic_error("count_support_inside: negative powers remain");
    return out;
}

// ---------------------------------------------------------------------------
// line reductions

namespace {

struct LineChoice {
    int count;     // stub cells on the chosen side
    bool is_col;
    int index;     // 1-based
    bool dense;    // stubs live in the complement
};

std::optional<LineChoice> pick_line(const Board& s) {
    std::optional<LineChoice> best;
    auto offer = [&](int count, bool is_col, int index, bool dense) {
        if (count > 2) return;
        LineChoice c{count, is_col, index, dense};
        auto key = [](const LineChoice& x) {
            return std::make_tuple(x.count, x.is_col, x.index, !x.dense);
        };
        if (!best || key(c) < key(*best)) best = c;
    };
    for (int i = 1; i <= s.rows(); ++i) {
        int in = s.row_count(i);
        offer(in, false, i, false);
        offer(s.cols() - in, false, i, true);
    }
    for (int j = 1; j <= s.cols(); ++j) {
        int in = s.col_count(j);
        offer(in, true, j, false);
        offer(s.rows() - in, true, j, true);
    }
    return best;
}

// move row `row` to the bottom and the columns in `special` (size <= 2,
// increasing) to the rightmost positions, preserving relative order elsewhere
Board rearranged(const Board& b, int row, const std::vector<int>& special) {
    const int m = b.rows(), n = b.cols();
    std::vector<int> row_to(m), col_to(n);
    for (int i = 1; i <= m; ++i)
        row_to[i - 1] = (i == row) ? m : (i < row ? i : i - 1);
    int next = 1;
    for (int j = 1; j <= n; ++j) {
        if (std::find(special.begin(), special.end(), j) != special.end())
            continue;
        col_to[j - 1] = next++;
    }
    for (size_t k = 0; k < special.size(); ++k)
        col_to[special[k] - 1] = n - int(special.size()) + 1 + int(k);
    return b.permuted(row_to, col_to);
}

void add_term(std::vector<TraceTerm>& acc, const Laurent& coeff,
              const Board& board, int rank) {
    if (rank < 0 || coeff.is_zero()) return;
    for (auto& t : acc) {
        if (t.rank == rank && t.board == board) {
            t.coeff += coeff;
            return;
        }
    }
    acc.push_back({coeff, board, rank});
}

Laurent mono(int e) { return Laurent::monomial(1, e); }

ReductionTrace expand_sparse(const Board& t, int r, ReductionTrace trace) {
    const int m = t.rows(), n = t.cols();
    const Board f = t.without_row(m);  // constraints off the expanded row
    std::vector<TraceTerm> acc;
    Laurent qm1 = Laurent::q() - mono(0);

    if (trace.stub_cells == 0) {
        // free bottom row: either inside the span of the rest or not
        add_term(acc, mono(r), f, r);
        add_term(acc, mono(n) - mono(r - 1), f, r - 1);
        trace.derived.emplace_back("rest", f);
    } else if (trace.stub_cells == 1) {
        // single forbidden entry, moved to the corner (m, n)
        const Board a = f.without_col(n);
        add_term(acc, mono(r) - mono(r - 1), a, r);
        add_term(acc, mono(r - 2) - mono(r - 1), a, r - 1);
        add_term(acc, mono(r - 1), f, r);
        add_term(acc, mono(n - 1) - mono(r - 2), f, r - 1);
        trace.derived.emplace_back("rest", f);
        trace.derived.emplace_back("corner_gone", a);
    } else {
        // two forbidden entries at (m, n-1) and (m, n)
        const Board bb = f.without_col(n);
        const Board c = f.without_col(n - 1);
        const Board a = bb.without_col(n - 1);
        Board d = bb;  // union column: constrained when either source is
        for (int i = 1; i < m; ++i)
            if (f.contains(i, n) && !d.contains(i, n - 1))
                d = d.with_cell(i, n - 1);

        add_term(acc, mono(r), a, r);
        add_term(acc, mono(n - 2) - mono(r - 1), a, r - 1);
        // last two columns dependent, one of them zero
        for (const Board* g : {&bb, &c}) {
            add_term(acc, mono(r - 1), *g, r);
            add_term(acc, -mono(r - 1), a, r);
            add_term(acc, mono(n - 2) - mono(r - 2), *g, r - 1);
            add_term(acc, -(mono(n - 2) - mono(r - 2)), a, r - 1);
        }
        // dependent with both nonzero: generator avoids the union column
        add_term(acc, qm1 * mono(r - 1), d, r);
        add_term(acc, -(qm1 * mono(r - 1)), a, r);
        add_term(acc, qm1 * (mono(n - 2) - mono(r - 2)), d, r - 1);
        add_term(acc, -(qm1 * (mono(n - 2) - mono(r - 2))), a, r - 1);
        // independent last two columns, by inclusion-exclusion
        for (int rho : {r, r - 1}) {
            Laurent fac = (rho == r) ? mono(r - 2)
                                     : (mono(n - 2) - mono(r - 3));
            add_term(acc, fac, f, rho);
            add_term(acc, -fac, bb, rho);
            add_term(acc, -fac, c, rho);
            add_term(acc, -(qm1 * fac), d, rho);
            add_term(acc, fac * mono(1), a, rho);
        }
        trace.derived.emplace_back("rest", f);
        trace.derived.emplace_back("last_gone", bb);
        trace.derived.emplace_back("next_gone", c);
        trace.derived.emplace_back("merged_union", d);
        trace.derived.emplace_back("both_gone", a);
    }
    std::erase_if(acc, [](const TraceTerm& t) { return t.coeff.is_zero(); });
    trace.terms = std::move(acc);
    return trace;
}

ReductionTrace expand_dense(const Board& t, int r, ReductionTrace trace) {
    const int m = t.rows(), n = t.cols();
    const Board f = t.without_row(m);
    std::vector<TraceTerm> acc;
    Laurent qm1 = Laurent::q() - mono(0);
    // free positions of column j above the bottom row
    auto open_above = [&](int j) { return (m - 1) - t.col_count(j); };

    if (trace.stub_cells == 0) {
        // bottom row forced to zero
        add_term(acc, mono(0), f, r);
        trace.derived.emplace_back("rest", f);
    } else if (trace.stub_cells == 1) {
        const Board a = f.without_col(n);
        const int ea = open_above(n);
        add_term(acc, mono(0), f, r);
        add_term(acc, qm1 * mono(ea), a, r - 1);
        trace.exponents["a"] = ea;
        trace.derived.emplace_back("rest", f);
        trace.derived.emplace_back("corner_gone", a);
    } else {
        const Board b2 = f.without_col(n);
        const Board c2 = f.without_col(n - 1);
        Board d2 = b2;  // intersection column: constrained only when both are
        int ed = 0;
        for (int i = 1; i < m; ++i) {
            bool left = f.contains(i, n - 1), right = f.contains(i, n);
            if (!(left && right) && d2.contains(i, n - 1))
                d2 = d2.without_cell(i, n - 1);
            if (!left && !right) ++ed;
        }
        const int eb = open_above(n), ec = open_above(n - 1);
        add_term(acc, mono(0), f, r);
        add_term(acc, qm1 * mono(eb), b2, r - 1);
        add_term(acc, qm1 * mono(ec), c2, r - 1);
        add_term(acc, qm1 * qm1 * mono(ed), d2, r - 1);
        trace.exponents["b"] = eb;
        trace.exponents["c"] = ec;
        trace.exponents["d"] = ed;
        trace.derived.emplace_back("rest", f);
        trace.derived.emplace_back("last_gone", b2);
        trace.derived.emplace_back("next_gone", c2);
        trace.derived.emplace_back("merged_intersection", d2);
    }
    std::erase_if(acc, [](const TraceTerm& t) { return t.coeff.is_zero(); });
    trace.terms = std::move(acc);
    return trace;
}

}  // namespace

std::optional<ReductionTrace> reduce_once(const Board& s, int r) {
    auto choice = pick_line(s);
    if (!choice) return std::nullopt;

    Board work = choice->is_col ? s.transposed() : s;
    const int m = work.rows(), n = work.cols();
    const int row = choice->index;

    std::vector<int> special;
    for (int j = 1; j <= n; ++j) {
        bool in_board = work.contains(row, j);
        if (in_board != choice->dense) special.push_back(j);
    }
    if (int(special.size()) != choice->count)
        throw std::logic_error("reduce_once: stub recount mismatch");

    ReductionTrace trace;
    trace.dense = choice->dense;
    trace.stub_cells = choice->count;
    trace.transposed = choice->is_col;
    trace.line = choice->index;
    trace.line_was_column = choice->is_col;

    Board t = rearranged(work, row, special);
    (void)m;
    return choice->dense ? expand_dense(t, r, std::move(trace))
                         : expand_sparse(t, r, std::move(trace));
}

// ---------------------------------------------------------------------------
// JSON views

std::string ReductionTrace::to_json() const {
    nlohmann::json j;
    j["expansion"] = dense ? "dense" : "sparse";
    j["stub_cells"] = stub_cells;
    j["transposed"] = transposed;
    j["line"] = line;
    j["line_was_column"] = line_was_column;
    if (!exponents.empty()) j["exponents"] = exponents;
    nlohmann::json jt = nlohmann::json::array();
    for (const auto& t : terms) {
        nlohmann::json e;
        e["coeff"] = nlohmann::json::parse(t.coeff.to_json());
        e["board"] = t.board.format();
        e["rank"] = t.rank;
        jt.push_back(std::move(e));
    }
    j["terms"] = std::move(jt);
    nlohmann::json jd;
    for (const auto& [name, b] : derived) jd[name] = b.format();
    j["derived"] = std::move(jd);
    return j.dump();
}

std::string CountResult::to_json() const {
    nlohmann::json j;
    j["provenance"] = provenance_name(provenance);
    if (kind == Kind::Polynomial) {
        j["kind"] = "polynomial";
        j["poly"] = nlohmann::json::parse(poly.to_json());
        j["display"] = poly.to_string();
        j["factored"] = poly.factored_string();
    } else {
        j["kind"] = "samples";
        nlohmann::json js = nlohmann::json::array();
        for (const auto& s : samples)
            js.push_back({{"q", s.q}, {"value", s.value.str()}});
        j["samples"] = std::move(js);
        if (quasi) {
            nlohmann::json jq;
            jq["consistent"] = quasi->consistent;
            jq["note"] = quasi->note;
            for (const auto& [cls, p] : quasi->class_polys)
                jq["classes"][std::to_string(cls)] =
                    nlohmann::json::parse(p.to_json());
            j["quasi"] = std::move(jq);
        }
    }
    if (trace) j["trace"] = nlohmann::json::parse(trace->to_json());
    return j.dump();
}

// ---------------------------------------------------------------------------
// Counter

Counter::Counter(CountOptions opt) : opt_(std::move(opt)) {
    if (opt_.threads < 1) opt_.threads = 1;
    for (long long q : opt_.sample_qs)
        if (!is_prime_power(q))
            throw std::invalid_argument("Counter: sample q " + std::to_string(q) +
                                        " is not a prime power");
    if (!opt_.cache_path.empty()) load_cache();
}

Counter::~Counter() {
    try {
        flush_cache();
    } catch (...) {
        // a failed cache append never masks the computed result
    }
}

BigInt Counter::count_at(const Board& s, int r, long long q) {
    return count_rank_dp(s, r, Field::make(q), OracleLimits{opt_.oracle_budget});
}

std::optional<Laurent> Counter::closed_form(const Board& s, int r) const {
    if (r == 1 && (s.rows() <= 20 || s.cols() <= 20)) return count_rank1(s);
    Board b = s.complement();
    if (b.ne_closed()) return count_support_inside(b, r);
    Board bt = b.transposed();
    if (bt.ne_closed()) return count_support_inside(bt, r);
    return std::nullopt;
}

std::optional<Laurent> Counter::count_poly(const Board& s, int r) {
    if (r < 0 || r > std::min(s.rows(), s.cols())) return Laurent{};
    if (r == 0) return Laurent::monomial(1, 0);
    if (s.cell_count() == s.rows() * s.cols()) return Laurent{};

    const std::string key = s.normalized().format() + "#" + std::to_string(r);
    {
        std::shared_lock lk(memo_mutex_);
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
    }

    std::optional<Laurent> out = closed_form(s, r);
    if (!out) {
        auto trace = reduce_once(s, r);
        if (!trace) return std::nullopt;
        Laurent total;
        for (const auto& term : trace->terms) {
            auto sub = count_poly(term.board, term.rank);
            if (!sub) return std::nullopt;
            total += term.coeff * *sub;
        }
        if (!total.is_polynomial())
            throw std::logic_error("count_poly: uncancelled negative powers");
        out = std::move(total);
    }

    {
        std::unique_lock lk(memo_mutex_);
        if (memo_.emplace(key, *out).second)
            fresh_.push_back({key, s.normalized(), r, *out});
    }
    return out;
}

CountResult Counter::count_auto(const Board& s, int r) {
    CountResult res;
    if (r < 0 || r > std::min(s.rows(), s.cols())) {
        res.poly = Laurent{};
        return res;
    }
    if (r == 0) {
        res.poly = Laurent::monomial(1, 0);
        return res;
    }
    if (s.cell_count() == s.rows() * s.cols()) {
        res.poly = Laurent{};
        return res;
    }

    const bool direct = closed_form(s, r).has_value();
    std::optional<ReductionTrace> trace =
        direct ? std::nullopt : reduce_once(s, r);
    if (direct || trace) {
        if (auto poly = count_poly(s, r)) {
            res.poly = std::move(*poly);
            res.provenance = direct ? Provenance::Formula : Provenance::Reduction;
            res.trace = std::move(trace);
            validate_poly(s, r, res.poly);
            return res;
        }
    }

    return sample_fallback(s, r);
}

CountResult Counter::sample_fallback(const Board& s, int r) {
    CountResult res;
    res.provenance = Provenance::OracleInterpolation;

    const int bound = s.rows() * s.cols();  // the count's degree is below this
    const size_t needed = size_t(bound) + 2;
    OracleLimits lim{opt_.oracle_budget};

    std::vector<long long> candidates =
        opt_.sample_qs.empty() ? prime_powers(1024) : opt_.sample_qs;
    std::vector<long long> feasible;
    for (long long q : candidates) {
        if (!oracle_feasible(s, r, q, lim)) continue;
        feasible.push_back(q);
        if (feasible.size() == needed) break;
    }

    SampleTable samples(feasible.size());
    if (opt_.threads > 1 && feasible.size() > 1) {
        std::vector<std::future<BigInt>> futs;
        futs.reserve(feasible.size());
        for (long long q : feasible)
            futs.push_back(std::async(std::launch::async, [&, q] {
                return count_rank_dp(s, r, Field::make(q), lim);
            }));
        for (size_t i = 0; i < feasible.size(); ++i)
            samples[i] = {feasible[i], futs[i].get()};
    } else {
        for (size_t i = 0; i < feasible.size(); ++i)
            samples[i] = {feasible[i],
                          count_rank_dp(s, r, Field::make(feasible[i]), lim)};
    }

    if (samples.size() >= needed) {
        auto fit = interpolate(samples, bound);
        if (auto* poly = std::get_if<Laurent>(&fit)) {
            res.kind = CountResult::Kind::Polynomial;
            res.poly = std::move(*poly);
            return res;
        }
    }
    res.kind = CountResult::Kind::Samples;
    res.samples = std::move(samples);
    res.quasi = detect_quasi(res.samples, bound);
    return res;
}

void Counter::validate_poly(const Board& s, int r, const Laurent& poly) {
    if (!opt_.validate) return;
    OracleLimits lim{std::min<long long>(opt_.oracle_budget, 200'000)};
    if (!oracle_feasible(s, r, 2, lim)) return;
    BigInt direct = count_rank_dp(s, r, Field::make(2), lim);
    if (poly.eval(2) != direct)
        throw std::logic_error("count validation failed at q = 2");
}

bool Counter::congruence_holds(const Board& s, int r, long long q) {
    if (r < 0) return true;
    BigInt c = count_at(s, r, q);
    BigInt t = big_pow(BigInt(q - 1), r);
    if (q == 2) {
        // q - 1 = 1: both conditions are vacuous
        return true;
    }
    if (c % t != 0) return false;
    BigInt lhs = c / t;
    BigInt rook = placement_count(s.complement(), r);
    BigInt diff = lhs - rook;
    return diff % (q - 1) == 0;
}

// ---------------------------------------------------------------------------
// cache

void Counter::load_cache() {
    std::ifstream in(opt_.cache_path);
    if (!in) return;  // absent file: start empty, create on flush
    std::string line;
    size_t lineno = 0;
    OracleLimits lim{50'000};
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(line);
        } catch (const nlohmann::json::exception&) {
            throw std::runtime_error("cache line " + std::to_string(lineno)
                                     + ": unparseable entry");
        }
        Board b = Board::parse(j.at("board").get<std::string>());
        int r = j.at("r").get<int>();
        Laurent poly = Laurent::from_json(j.at("poly").dump());
        if (oracle_feasible(b, r, 2, lim)) {
            if (poly.eval(2) != count_rank_dp(b, r, Field::make(2), lim))
                throw std::runtime_error("cache line " + std::to_string(lineno)
                                         + ": stored value fails re-check");
        }
        memo_.emplace(b.format() + "#" + std::to_string(r), std::move(poly));
    }
}

void Counter::flush_cache() {
    if (opt_.cache_path.empty()) return;
    std::vector<FreshEntry> pending;
    {
        std::unique_lock lk(memo_mutex_);
        pending.swap(fresh_);
    }
    if (pending.empty()) return;
    std::ofstream out(opt_.cache_path, std::ios::app);
    if (!out) throw std::runtime_error("cache append failed: " + opt_.cache_path);
    for (const auto& e : pending) {
        nlohmann::json j;
        j["board"] = e.board.format();
        j["m"] = e.board.rows();
        j["n"] = e.board.cols();
        j["r"] = e.r;
        j["poly"] = nlohmann::json::parse(e.poly.to_json());
        out << j.dump() << '\n';
    }
}

}  // namespace qmr
