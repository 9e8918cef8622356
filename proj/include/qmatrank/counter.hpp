#pragma once

#include <map>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "qmatrank/board.hpp"
#include "qmatrank/laurent.hpp"
#include "qmatrank/oracle.hpp"

namespace qmr {

enum class Provenance { Formula, Reduction, OracleInterpolation };
const char* provenance_name(Provenance p);

struct TraceTerm {
    Laurent coeff;  // may carry negative q-powers; they cancel in the total
    Board board;
    int rank = 0;
};

// One expansion step: the counted quantity equals the sum of coeff * count
// over the terms, all of which live on strictly smaller grids.
struct ReductionTrace {
    bool dense = false;     // target line chosen in the complement, not the board
    int stub_cells = 0;     // cells of the target line on its side (0, 1 or 2)
    bool transposed = false;
    int line = 0;           // 1-based index of the target line before moving
    bool line_was_column = false;
    std::vector<TraceTerm> terms;
    std::vector<std::pair<std::string, Board>> derived;
    std::map<std::string, int> exponents;  // the a/b/c/d column counts
    std::string to_json() const;
};

struct CountResult {
    enum class Kind { Polynomial, Samples };
    Kind kind = Kind::Polynomial;
    Laurent poly;          // Kind::Polynomial
    SampleTable samples;   // Kind::Samples: values at the feasible prime powers
    std::optional<QuasiFit> quasi;        // recorded for sample-only results
    std::optional<ReductionTrace> trace;  // top-level expansion when reduced
    Provenance provenance = Provenance::Formula;
    std::string to_json() const;
};

struct CountOptions {
    long long oracle_budget = 10'000'000;
    int threads = 1;
    bool validate = true;         // spot-check polynomial results at q = 2
    std::string cache_path;       // JSON-lines result cache, loaded + appended
    std::vector<long long> sample_qs;  // override; must be prime powers
};

// ---- closed forms ----

// rank-1 counts via the column-survey sum over nonempty row subsets;
// min(m, n) <= 20
Laurent count_rank1(const Board& s);
// zero diagonal on [n] x [n]: ((2q-1)^n - 2 q^n + 1) / (q - 1)
Laurent count_rank1_diagonal(int n);
// invertible n x n matrices: prod_{i<n} (q^n - q^i)
Laurent count_invertible(int n);
// matrices of rank r with support inside the closure-closed board b:
// (q-1)^r q^{#b - r} R_r^{NE}(b, q^{-1}); requires b.ne_closed()
Laurent count_support_inside(const Board& b, int r);

// one expansion step on the sparsest qualifying line (a board line with <= 2
// cells or a complement line with <= 2 cells); nullopt when none qualifies
std::optional<ReductionTrace> reduce_once(const Board& s, int r);

// The counting engine: dispatch order is trivial cases, rank-1 closed form,
// closure-closed complement, memoized line reductions, and finally oracle
// sampling with exact interpolation.
class Counter {
  public:
    explicit Counter(CountOptions opt = {});
    ~Counter();
    Counter(const Counter&) = delete;
    Counter& operator=(const Counter&) = delete;

    const CountOptions& options() const { return opt_; }

    CountResult count_auto(const Board& s, int r);
    // exact count at one prime power via the subspace DP
    BigInt count_at(const Board& s, int r, long long q);
    // value/(q-1)^r is congruent to the r-rook count of the complement
    // modulo q-1; returns whether the sampled instance satisfies it
    bool congruence_holds(const Board& s, int r, long long q);

    void flush_cache();  // append results computed this session to cache_path

  private:
    CountOptions opt_;
    mutable std::shared_mutex memo_mutex_;
    std::unordered_map<std::string, Laurent> memo_;
    struct FreshEntry {
        std::string key;
        Board board;  // normalized
        int r;
        Laurent poly;
    };
    std::vector<FreshEntry> fresh_;

    std::optional<Laurent> count_poly(const Board& s, int r);
    std::optional<Laurent> closed_form(const Board& s, int r) const;
    CountResult sample_fallback(const Board& s, int r);
    void validate_poly(const Board& s, int r, const Laurent& poly);
    void load_cache();
};

}  // namespace qmr
