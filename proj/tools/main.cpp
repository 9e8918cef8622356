#include <cstdlib>
#include <iostream>
#include <memory>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qmatrank/qmatrank.h"

namespace {

// exit codes: 0 ok/polynomial, 1 error, 2 samples-only count, 3 verify failures
constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitSamples = 2;
constexpr int kExitRefuted = 3;

struct StrDel {
    void operator()(char* p) const { qmr_string_free(p); }
};
using CStr = std::unique_ptr<char, StrDel>;

struct BoardDel {
    void operator()(qmr_board* b) const { qmr_board_free(b); }
};
using BoardPtr = std::unique_ptr<qmr_board, BoardDel>;

struct PermDel {
    void operator()(qmr_perm* w) const { qmr_perm_free(w); }
};
using PermPtr = std::unique_ptr<qmr_perm, PermDel>;

struct PolyDel {
    void operator()(qmr_poly* p) const { qmr_poly_free(p); }
};
using PolyPtr = std::unique_ptr<qmr_poly, PolyDel>;

struct CounterDel {
    void operator()(qmr_counter* c) const { qmr_counter_free(c); }
};
using CounterPtr = std::unique_ptr<qmr_counter, CounterDel>;

struct ResultDel {
    void operator()(qmr_count_result* r) const { qmr_result_free(r); }
};
using ResultPtr = std::unique_ptr<qmr_count_result, ResultDel>;

[[noreturn]] void die(const std::string& context) {
    std::cerr << "error: " << context;
    std::string detail = qmr_last_error();
    if (!detail.empty()) std::cerr << ": " << detail;
    std::cerr << "\n";
    std::exit(kExitError);
}

void need(qmr_status st, const std::string& context) {
    if (st != QMR_OK) die(context);
}

std::string take(CStr s) { return s ? std::string(s.get()) : std::string(); }

BoardPtr parse_board(const std::string& spec) {
    qmr_board* raw = nullptr;
    need(qmr_board_parse(spec.c_str(), &raw), "board '" + spec + "'");
    return BoardPtr(raw);
}

PermPtr parse_perm(const std::string& word) {
    qmr_perm* raw = nullptr;
    need(qmr_perm_parse(word.c_str(), &raw), "permutation '" + word + "'");
    return PermPtr(raw);
}

std::string poly_text(const qmr_poly* p, bool factored) {
    char* raw = nullptr;
    need(factored ? qmr_poly_factored_string(p, &raw)
                  : qmr_poly_to_string(p, &raw),
         "formatting polynomial");
    return take(CStr(raw));
}

void print_schema(const std::string& command, nlohmann::json query,
                  nlohmann::json result, const std::string& provenance) {
    query["command"] = command;
    nlohmann::json j;
    j["query"] = std::move(query);
    j["result"] = std::move(result);
    j["provenance"] = provenance;
    std::cout << j.dump() << "\n";
}

int default_threads() {
    if (const char* env = std::getenv("QMATRANK_THREADS")) {
        int v = std::atoi(env);
        if (v > 0) return v;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

struct CountArgs {
    std::string board;
    int rank = 0;
    long long at_q = -1;
    bool factor = false;
    std::string format = "text";
    std::string cache;
    std::string sample_qs;
    long long budget = 10'000'000;
    int threads = 0;
};

int cmd_count(const CountArgs& a) {
    BoardPtr board = parse_board(a.board);
    CounterPtr counter;
    {
        qmr_counter* raw = nullptr;
        need(qmr_counter_new(a.budget, a.threads > 0 ? a.threads : default_threads(),
                             /*validate=*/1,
                             a.cache.empty() ? nullptr : a.cache.c_str(),
                             a.sample_qs.empty() ? nullptr : a.sample_qs.c_str(),
                             &raw),
             "creating counter");
        counter.reset(raw);
    }
    CStr fmt;
    {
        char* raw = nullptr;
        need(qmr_board_format(board.get(), &raw), "formatting board");
        fmt.reset(raw);
    }
    nlohmann::json query{{"board", fmt.get()}, {"rank", a.rank}};

    if (a.at_q > 0) {
        char* raw = nullptr;
        need(qmr_count_at(counter.get(), board.get(), a.rank, a.at_q, &raw),
             "evaluating count at q=" + std::to_string(a.at_q));
        std::string value = take(CStr(raw));
        if (a.format == "json") {
            query["at_q"] = a.at_q;
            print_schema("count", query, nlohmann::json{{"value", value}},
                         "oracle+interpolation");
        } else {
            std::cout << value << "\n";
        }
        return kExitOk;
    }

    ResultPtr result;
    {
        qmr_count_result* raw = nullptr;
        need(qmr_count_auto(counter.get(), board.get(), a.rank, &raw),
             "counting");
        result.reset(raw);
    }
    const bool polynomial = qmr_result_kind(result.get()) == 0;
    const std::string provenance = qmr_result_provenance(result.get());

    if (a.format == "json") {
        char* raw = nullptr;
        need(qmr_result_json(result.get(), &raw), "serializing result");
        print_schema("count", query, nlohmann::json::parse(take(CStr(raw))),
                     provenance);
    } else if (polynomial) {
        qmr_poly* praw = nullptr;
        need(qmr_result_poly(result.get(), &praw), "extracting polynomial");
        PolyPtr poly(praw);
        std::cout << poly_text(poly.get(), a.factor) << "\n";
    } else {
        char* raw = nullptr;
        need(qmr_result_json(result.get(), &raw), "serializing result");
        nlohmann::json j = nlohmann::json::parse(take(CStr(raw)));
        std::cout << "no polynomial obtained; exact values:\n";
        for (const auto& s : j["samples"])
            std::cout << "  q=" << s["q"].get<long long>() << ": "
                      << s["value"].get<std::string>() << "\n";
        if (j.contains("quasi") && j["quasi"].contains("note")) {
            std::string note = j["quasi"]["note"].get<std::string>();
            if (!note.empty()) std::cout << "note: " << note << "\n";
        }
    }
    return polynomial ? kExitOk : kExitSamples;
}

int cmd_rook(const std::string& board_spec, int rank,
             const std::string& convention, const std::string& format) {
    BoardPtr board = parse_board(board_spec);
    qmr_poly* raw = nullptr;
    need(qmr_rook_poly(board.get(), rank, convention == "SE" ? 0 : 1, &raw),
         "rook polynomial");
    PolyPtr poly(raw);
    if (format == "json") {
        char* js = nullptr;
        need(qmr_poly_to_json(poly.get(), &js), "serializing polynomial");
        char* fmt = nullptr;
        need(qmr_board_format(board.get(), &fmt), "formatting board");
        print_schema("rook",
                     {{"board", take(CStr(fmt))},
                      {"rank", rank},
                      {"convention", convention}},
                     nlohmann::json{{"poly", nlohmann::json::parse(take(CStr(js)))},
                                    {"display", poly_text(poly.get(), false)}},
                     "formula");
    } else {
        std::cout << poly_text(poly.get(), false) << "\n";
    }
    return kExitOk;
}

struct PermArgs {
    std::string word;
    bool rothe = false;
    bool hull = false;
    bool decompose = false;
    bool patterns = false;
    bool inverse = false;
    std::string format = "text";
};

int cmd_perm(const PermArgs& a) {
    PermPtr w = parse_perm(a.word);
    nlohmann::json out;
    std::vector<std::string> lines;

    auto board_field = [&](bool hull) {
        qmr_board* raw = nullptr;
        need(hull ? qmr_perm_hull(w.get(), &raw) : qmr_perm_rothe(w.get(), &raw),
             hull ? "hull" : "diagram");
        BoardPtr b(raw);
        char* fmt = nullptr;
        need(qmr_board_format(b.get(), &fmt), "formatting board");
        std::string text = take(CStr(fmt));
        int cells = qmr_board_cell_count(b.get());
        out[hull ? "hull" : "rothe"] = text;
        out[hull ? "hull_cells" : "rothe_cells"] = cells;
        lines.push_back((hull ? "hull (" : "rothe (") + std::to_string(cells)
                        + " cells): " + text);
    };

    if (a.rothe) board_field(false);
    if (a.hull) board_field(true);
    if (a.decompose) {
        char* raw = nullptr;
        need(qmr_perm_sv_summary(w.get(), &raw), "decomposition");
        nlohmann::json j = nlohmann::json::parse(take(CStr(raw)));
        out["decomposition"] = j;
        lines.push_back("k=" + std::to_string(j["k"].get<int>())
                        + " v=" + j["v"].get<std::string>());
    }
    if (a.patterns) {
        bool vex = qmr_perm_is_vexillary(w.get()) != 0;
        bool sv = qmr_perm_is_skew_vexillary(w.get()) != 0;
        out["vexillary"] = vex;
        out["skew_vexillary"] = sv;
        lines.push_back(std::string("vexillary: ") + (vex ? "yes" : "no"));
        lines.push_back(std::string("skew-vexillary: ") + (sv ? "yes" : "no"));
    }
    if (a.inverse) {
        qmr_perm* raw = nullptr;
        need(qmr_perm_inverse(w.get(), &raw), "inverse");
        PermPtr inv(raw);
        char* word = nullptr;
        need(qmr_perm_to_string(inv.get(), &word), "formatting inverse");
        std::string text = take(CStr(word));
        out["inverse"] = text;
        lines.push_back("inverse: " + text);
    }
    if (out.empty()) {
        out["inversions"] = qmr_perm_inversions(w.get());
        lines.push_back("inversions: "
                        + std::to_string(qmr_perm_inversions(w.get())));
    }

    if (a.format == "json") {
        print_schema("perm", {{"word", a.word}}, out, "formula");
    } else {
        for (const auto& l : lines) std::cout << l << "\n";
    }
    return kExitOk;
}

int cmd_bruhat(const std::string& word, bool poincare, const std::string& leq,
               const std::string& format) {
    PermPtr w = parse_perm(word);
    nlohmann::json out;
    std::vector<std::string> lines;
    if (poincare || leq.empty()) {
        qmr_poly* raw = nullptr;
        need(qmr_poincare_poly(w.get(), &raw), "poincare polynomial");
        PolyPtr poly(raw);
        std::string text = poly_text(poly.get(), false);
        out["poincare"] = text;
        lines.push_back(text);
    }
    if (!leq.empty()) {
        PermPtr u = parse_perm(leq);
        bool le = qmr_bruhat_leq(u.get(), w.get()) != 0;
        out["leq"] = le;
        lines.push_back(leq + (le ? " <= " : " !<= ") + word);
    }
    if (format == "json") {
        print_schema("bruhat", {{"word", word}, {"leq", leq}}, out, "formula");
    } else {
        for (const auto& l : lines) std::cout << l << "\n";
    }
    return kExitOk;
}

int cmd_series(int n, const std::string& format) {
    char* raw = nullptr;
    need(qmr_series_json(n, &raw), "series");
    nlohmann::json j = nlohmann::json::parse(take(CStr(raw)));
    if (format == "json") {
        print_schema("series", {{"n", n}}, j, "formula");
    } else {
        for (const char* name : {"V", "I", "SV"}) {
            std::cout << name << ":";
            for (const auto& c : j[name])
                std::cout << " " << c.get<std::string>();
            std::cout << "\n";
        }
    }
    return kExitOk;
}

int cmd_verify(const std::string& claim, int n_max, long long budget,
               const std::string& format) {
    char* raw = nullptr;
    int passed = 0;
    need(qmr_verify_run(claim.c_str(), n_max, budget, &raw, &passed),
         "verification '" + claim + "'");
    nlohmann::json j = nlohmann::json::parse(take(CStr(raw)));
    if (format == "json") {
        print_schema("verify", {{"claim", claim}, {"n_max", n_max}}, j,
                     "formula");
    } else {
        std::cout << claim << ": " << (passed ? "pass" : "FAIL") << " ("
                  << j["instances"].get<long long>() << " instances, "
                  << j["seconds"].get<double>() << "s)\n";
        for (const auto& f : j["failures"])
            std::cout << "  counterexample " << f["witness"].get<std::string>()
                      << ": expected " << f["expected"].get<std::string>()
                      << ", got " << f["actual"].get<std::string>() << "\n";
    }
    return passed ? kExitOk : kExitRefuted;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"rank counts of matrices over F_q with forced zero entries"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(qmr_version()));

    CountArgs ca;
    auto* count = app.add_subcommand("count", "count matrices by rank and support");
    count->add_option("board", ca.board, "board spec")->required();
    count->add_option("--rank,-r", ca.rank, "target rank")->required();
    count->add_option("--at-q", ca.at_q, "evaluate at one prime power only");
    count->add_flag("--factor", ca.factor, "print in factored form");
    count->add_option("--format", ca.format, "text or json")
        ->check(CLI::IsMember({"text", "json"}));
    count->add_option("--cache", ca.cache, "JSON-lines result cache path");
    count->add_option("--sample-q", ca.sample_qs,
                      "comma-separated prime powers for sampling");
    count->add_option("--budget", ca.budget, "oracle state budget")
        ->check(CLI::PositiveNumber);
    count->add_option("--threads", ca.threads, "worker threads");

    std::string rook_board, rook_conv = "SE", rook_fmt = "text";
    int rook_rank = 0;
    auto* rook = app.add_subcommand("rook", "q-rook polynomial of a board");
    rook->add_option("board", rook_board, "board spec")->required();
    rook->add_option("--rank,-r", rook_rank, "rooks placed")->required();
    rook->add_option("--convention", rook_conv, "SE or NE")
        ->check(CLI::IsMember({"SE", "NE"}));
    rook->add_option("--format", rook_fmt, "text or json")
        ->check(CLI::IsMember({"text", "json"}));

    PermArgs pa;
    auto* perm = app.add_subcommand("perm", "permutation diagrams and patterns");
    perm->add_option("word", pa.word, "one-line notation")->required();
    perm->add_flag("--rothe", pa.rothe, "print the diagram board");
    perm->add_flag("--hull", pa.hull, "print the left hull board");
    perm->add_flag("--decompose", pa.decompose, "skew-vexillary split and v");
    perm->add_flag("--patterns", pa.patterns, "pattern class membership");
    perm->add_flag("--inverse", pa.inverse, "print the inverse word");
    perm->add_option("--format", pa.format, "text or json")
        ->check(CLI::IsMember({"text", "json"}));

    std::string bruhat_word, bruhat_leq_word, bruhat_fmt = "text";
    bool bruhat_poincare = false;
    auto* bruhat = app.add_subcommand("bruhat", "strong-order queries");
    bruhat->add_option("word", bruhat_word, "one-line notation")->required();
    bruhat->add_flag("--poincare", bruhat_poincare,
                     "rank polynomial of the upper interval");
    bruhat->add_option("--leq", bruhat_leq_word, "test WORD <= word");
    bruhat->add_option("--format", bruhat_fmt, "text or json")
        ->check(CLI::IsMember({"text", "json"}));

    int series_n = 0;
    std::string series_fmt = "text";
    auto* series = app.add_subcommand("series", "avoider generating series");
    series->add_option("n", series_n, "prefix length (<= 9)")->required();
    series->add_option("--format", series_fmt, "text or json")
        ->check(CLI::IsMember({"text", "json"}));

    std::string verify_claim, verify_fmt = "text";
    int verify_n = 4;
    long long verify_budget = 10'000'000;
    auto* verify = app.add_subcommand("verify", "run a conjecture harness");
    verify->add_option("claim", verify_claim,
                       "rank-factorization | poincare-bound | hull-bound | "
                       "rook-equinumerosity | rank1-t-positivity")
        ->required();
    verify->add_option("--n-max", verify_n, "sweep bound");
    verify->add_option("--budget", verify_budget, "oracle state budget")
        ->check(CLI::PositiveNumber);
    verify->add_option("--format", verify_fmt, "text or json")
        ->check(CLI::IsMember({"text", "json"}));

    CLI11_PARSE(app, argc, argv);

    try {
        if (count->parsed()) return cmd_count(ca);
        if (rook->parsed())
            return cmd_rook(rook_board, rook_rank, rook_conv, rook_fmt);
        if (perm->parsed()) return cmd_perm(pa);
        if (bruhat->parsed())
            return cmd_bruhat(bruhat_word, bruhat_poincare, bruhat_leq_word,
                              bruhat_fmt);
        if (series->parsed()) return cmd_series(series_n, series_fmt);
        if (verify->parsed())
            return cmd_verify(verify_claim, verify_n, verify_budget, verify_fmt);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitError;
}
