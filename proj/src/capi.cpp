#include "qmatrank/qmatrank.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "json.hpp"
#include "qmatrank/board.hpp"
#include "qmatrank/counter.hpp"
#include "qmatrank/laurent.hpp"
#include "qmatrank/oracle.hpp"
#include "qmatrank/perm.hpp"
#include "qmatrank/rooks.hpp"
#include "qmatrank/series.hpp"
#include "qmatrank/verify.hpp"

struct qmr_board {
    qmr::Board b;
};
struct qmr_poly {
    qmr::Laurent p;
};
struct qmr_perm {
    qmr::Perm w;
};
struct qmr_counter {
    qmr::Counter c;
    explicit qmr_counter(qmr::CountOptions o) : c(std::move(o)) {}
};
struct qmr_count_result {
    qmr::CountResult r;
};

namespace {

thread_local std::string g_error;

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (out) std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

template <typename Fn>
qmr_status guarded(Fn&& fn) {
    try {
        fn();
        g_error.clear();
        return QMR_OK;
    } catch (const qmr::ParseError& e) {
        g_error = e.what();
        return QMR_ERR_PARSE;
    } catch (const qmr::OracleInfeasible& e) {
        g_error = e.what();
        return QMR_ERR_INFEASIBLE;
    } catch (const std::invalid_argument& e) {
        g_error = e.what();
        return QMR_ERR_DOMAIN;
    } catch (const std::logic_error& e) {
        g_error = e.what();
        return QMR_ERR_INTERNAL;
    } catch (const std::bad_alloc&) {
        g_error = "out of memory";
        return QMR_ERR_INTERNAL;
    } catch (const std::exception& e) {
        g_error = e.what();
        return QMR_ERR_IO;
    }
}

}  // namespace

extern "C" {

const char* qmr_version(void) { return "1.0.0"; }

const char* qmr_last_error(void) { return g_error.c_str(); }

void qmr_string_free(char* s) { std::free(s); }

/* ---- boards ---- */

qmr_status qmr_board_parse(const char* spec, qmr_board** out) {
    if (!spec || !out) {
        g_error = "null argument";
        return QMR_ERR_DOMAIN;
    }
    return guarded([&] { *out = new qmr_board{qmr::Board::parse(spec)}; });
}

void qmr_board_free(qmr_board* b) { delete b; }

int qmr_board_rows(const qmr_board* b) { return b ? b->b.rows() : 0; }
int qmr_board_cols(const qmr_board* b) { return b ? b->b.cols() : 0; }
int qmr_board_cell_count(const qmr_board* b) {
    return b ? b->b.cell_count() : 0;
}
int qmr_board_contains(const qmr_board* b, int i, int j) {
    if (!b || i < 1 || j < 1 || i > b->b.rows() || j > b->b.cols()) return 0;
    return b->b.contains(i, j) ? 1 : 0;
}
int qmr_board_ne_closed(const qmr_board* b) {
    return b && b->b.ne_closed() ? 1 : 0;
}

qmr_status qmr_board_complement(const qmr_board* b, qmr_board** out) {
    if (!b || !out) {
        g_error = "null argument";
        return QMR_ERR_DOMAIN;
    }
    return guarded([&] { *out = new qmr_board{b->b.complement()}; });
}

qmr_status qmr_board_transpose(const qmr_board* b, qmr_board** out) {
    if (!b || !out) {
        g_error = "null argument";
        return QMR_ERR_DOMAIN;
    }
    return guarded([&] { *out = new qmr_board{b->b.transposed()}; });
}

qmr_status qmr_board_format(const qmr_board* b, char** out) {
    if (!b || !out) {
        g_error = "null argument";
        return QMR_ERR_DOMAIN;
    }
    return guarded([&] { *out = dup_string(b->b.format()); });
}

/* ---- polynomials ---- */

void qmr_poly_free(qmr_poly* p) { delete p; }

qmr_status qmr_poly_to_string(const qmr_poly* p, char** out) {
    if (!p || !out) {
        g_error = "null argument";
        return QMR_ERR_DOMAIN;
    }
    return guarded([&] { *out = dup_string(p->p.to_string()); });
}

qmr_status qmr_poly_factored_string(const qmr_poly* p, char** out) {
    if (!p || !out) {
        g_error = "null argument";
        return QMR_ERR_DOMAIN;
    }
    return guarded([&] { *out = dup_string(p->p.factored_string()); });
}

qmr_status qmr_poly_to_json(const qmr_poly* p, char** out) {
    if (!p || !out) {
        g_error = "null argument";
        return QMR_ERR_DOMAIN;
    }
    return guarded([&] { *out = dup_string(p->p.to_json()); });
}

qmr_status qmr_poly_eval(const qmr_poly* p, long long q, char** out) {
    if (!p || !out) {
        g_error = "null argument";
        return QMR_ERR_DOMAIN;
    }
    return guarded([&] {
        *out = dup_string(p->p.eval_rational(qmr::BigRat(q)).str());
    });
}

int qmr_poly_equal(const qmr_poly* a, const qmr_poly* b) {
    if (!a || !b) return 0;
    return a->p == b->p ? 1 : 0;
}

/* ---- counting ---- */

qmr_status qmr_counter_new(long long oracle_budget, int threads, int validate,
                           const char* cache_path, const char* sample_qs,
                           qmr_counter** out) {
    if (!out) {
        g_error = "null argument";
        return QMR_ERR_DOMAIN;
    }
    if (oracle_budget <= 0) {
        g_error = "oracle budget must be positive";
        return QMR_ERR_DOMAIN;
    }
    return guarded([&] {
        qmr::CountOptions opt;
        opt.oracle_budget = oracle_budget;
        opt.threads = threads > 0 ? threads : 1;
        opt.validate = validate != 0;
        if (cache_path) opt.cache_path = cache_path;
        if (sample_qs) {
            std::string csv(sample_qs);
            size_t pos = 0;
            while (pos < csv.size()) {
                size_t comma = csv.find(',', pos);
                if (comma == std::string::npos) comma = csv.size();
                std::string tok = csv.substr(pos, comma - pos);
                pos = comma + 1;
                if (tok.empty()) continue;
                long long q = std::stoll(tok);
                long long p = 0;
                int k = 0;
                if (!qmr::is_prime_power(q, &p, &k))
                    throw std::invalid_argument(
                        "sample q override " + tok + " is not a prime power");
                opt.sample_qs.push_back(q);
            }
        }
        *out = new qmr_counter(std::move(opt));
    });
}

void qmr_counter_free(qmr_counter* c) { delete c; }

qmr_status qmr_count_auto(qmr_counter* c, const qmr_board* s, int r,
                          qmr_count_result** out) {
    if (!c || !s || !out) {
        g_error = "null argument";
        return QMR_ERR_DOMAIN;
    }
    return guarded([&] { *out = new qmr_count_result{c->c.count_auto(s->b, r)}; });
}

qmr_status qmr_count_at(qmr_counter* c, const qmr_board* s, int r, long long q,
                        char** decimal_out) {
    if (!c || !s || !decimal_out) {
        g_error = "null argument";
        return QMR_ERR_DOMAIN;
    }
    return guarded([&] {
        *decimal_out = dup_string(c->c.count_at(s->b, r, q).str());
    });
}

qmr_status qmr_congruence_holds(qmr_counter* c, const qmr_board* s, int r,
                                long long q, int* out) {
    if (!c || !s || !out) {
        g_error = "null argument";
        return QMR_ERR_DOMAIN;
    }
    return guarded([&] { *out = c->c.congruence_holds(s->b, r, q) ? 1 : 0; });
}

void qmr_result_free(qmr_count_result* r) { delete r; }

int qmr_result_kind(const qmr_count_result* r) {
    if (!r) return -1;
    return r->r.kind == qmr::CountResult::Kind::Polynomial ? 0 : 1;
}

const char* qmr_result_provenance(const qmr_count_result* r) {
    return r ? qmr::provenance_name(r->r.provenance) : "?";
}

qmr_status qmr_result_poly(const qmr_count_result* r, qmr_poly** out) {
    if (!r || !out) {
        g_error = "null argument";
        return QMR_ERR_DOMAIN;
    }
    if (r->r.kind != qmr::CountResult::Kind::Polynomial) {
        g_error = "result holds samples, not a polynomial";
        return QMR_ERR_DOMAIN;
    }
    return guarded([&] { *out = new qmr_poly{r->r.poly}; });
}

qmr_status qmr_result_json(const qmr_count_result* r, char** out) {
    if (!r || !out) {
        g_error = "null argument";
        return QMR_ERR_DOMAIN;
    }
    return guarded([&] { *out = dup_string(r->r.to_json()); });
}

qmr_status qmr_rank1_poly(const qmr_board* s, qmr_poly** out) {
    if (!s || !out) {
        g_error = "null argument";
        return QMR_ERR_DOMAIN;
    }
    return guarded([&] { *out = new qmr_poly{qmr::count_rank1(s->b)}; });
}

qmr_status qmr_invertible_poly(int n, qmr_poly** out) {
    if (!out) {
        g_error = "null argument";
        return QMR_ERR_DOMAIN;
    }
    return guarded([&] { *out = new qmr_poly{qmr::count_invertible(n)}; });
}

/* ---- rooks ---- */

qmr_status qmr_rook_poly(const qmr_board* b, int r, int convention,
                         qmr_poly** out) {
    if (!b || !out) {
        g_error = "null argument";
        return QMR_ERR_DOMAIN;
    }
    if (convention != 0 && convention != 1) {
        g_error = "convention must be 0 (SE) or 1 (NE)";
        return QMR_ERR_DOMAIN;
    }
    return guarded([&] {
        auto conv = convention == 0 ? qmr::RookConvention::SE
                                    : qmr::RookConvention::NE;
        *out = new qmr_poly{qmr::rook_poly(b->b, r, conv)};
    });
}

qmr_status qmr_rook_count(const qmr_board* b, int r, long long* out) {
    if (!b || !out) {
        g_error = "null argument";
        return QMR_ERR_DOMAIN;
    }
    return guarded([&] { *out = qmr::placement_count(b->b, r); });
}

/* ---- permutations ---- */

qmr_status qmr_perm_parse(const char* word, qmr_perm** out) {
    if (!word || !out) {
        g_error = "null argument";
        return QMR_ERR_DOMAIN;
    }
    return guarded([&] { *out = new qmr_perm{qmr::Perm::parse(word)}; });
}

void qmr_perm_free(qmr_perm* w) { delete w; }

qmr_status qmr_perm_to_string(const qmr_perm* w, char** out) {
    if (!w || !out) {
        g_error = "null argument";
        return QMR_ERR_DOMAIN;
    }
    return guarded([&] { *out = dup_string(w->w.to_string()); });
}

int qmr_perm_size(const qmr_perm* w) { return w ? w->w.n() : 0; }

long long qmr_perm_inversions(const qmr_perm* w) {
    return w ? w->w.inversions() : -1;
}

qmr_status qmr_perm_inverse(const qmr_perm* w, qmr_perm** out) {
    if (!w || !out) {
        g_error = "null argument";
        return QMR_ERR_DOMAIN;
    }
    return guarded([&] { *out = new qmr_perm{w->w.inverse()}; });
}

qmr_status qmr_perm_rothe(const qmr_perm* w, qmr_board** out) {
    if (!w || !out) {
        g_error = "null argument";
        return QMR_ERR_DOMAIN;
    }
    return guarded([&] { *out = new qmr_board{qmr::rothe_diagram(w->w)}; });
}

qmr_status qmr_perm_hull(const qmr_perm* w, qmr_board** out) {
    if (!w || !out) {
        g_error = "null argument";
        return QMR_ERR_DOMAIN;
    }
    return guarded([&] { *out = new qmr_board{qmr::left_hull(w->w)}; });
}

int qmr_perm_is_vexillary(const qmr_perm* w) {
    return w && qmr::is_vexillary(w->w) ? 1 : 0;
}

int qmr_perm_is_skew_vexillary(const qmr_perm* w) {
    return w && qmr::is_skew_vexillary(w->w) ? 1 : 0;
}

qmr_status qmr_perm_sv_summary(const qmr_perm* w, char** out) {
    if (!w || !out) {
        g_error = "null argument";
        return QMR_ERR_DOMAIN;
    }
    return guarded([&] {
        auto dec = qmr::sv_decompose(w->w);
        if (!dec)
            throw std::invalid_argument(
                "permutation is not skew-vexillary; no decomposition exists");
        qmr::SkewShape shape = qmr::sv_shape(w->w);
        qmr::Perm v = qmr::construct_v(w->w);
        nlohmann::json j;
        j["k"] = dec->k;
        j["prefix"] = dec->prefix.to_string();
        j["suffix"] = dec->suffix.to_string();
        j["lambda"] = shape.lambda;
        j["mu"] = shape.mu;
        j["n"] = shape.n;
        j["v"] = v.to_string();
        *out = dup_string(j.dump());
    });
}

int qmr_bruhat_leq(const qmr_perm* u, const qmr_perm* w) {
    if (!u || !w || u->w.n() != w->w.n()) return 0;
    return qmr::bruhat_leq(u->w, w->w) ? 1 : 0;
}

qmr_status qmr_poincare_poly(const qmr_perm* w, qmr_poly** out) {
    if (!w || !out) {
        g_error = "null argument";
        return QMR_ERR_DOMAIN;
    }
    return guarded([&] { *out = new qmr_poly{qmr::poincare_upper(w->w)}; });
}

/* ---- series and verification ---- */

qmr_status qmr_series_json(int nmax, char** out) {
    if (!out) {
        g_error = "null argument";
        return QMR_ERR_DOMAIN;
    }
    return guarded([&] { *out = dup_string(qmr::series_json(nmax)); });
}

qmr_status qmr_verify_run(const char* claim, int n_max, long long oracle_budget,
                          char** report_json, int* passed) {
    if (!claim || !report_json || !passed) {
        g_error = "null argument";
        return QMR_ERR_DOMAIN;
    }
    return guarded([&] {
        qmr::CountOptions opt;
        if (oracle_budget > 0) opt.oracle_budget = oracle_budget;
        qmr::Counter counter(opt);
        qmr::VerificationReport rep =
            qmr::run_verification(claim, n_max, counter);
        *report_json = dup_string(rep.to_json());
        *passed = rep.passed() ? 1 : 0;
    });
}

}  // extern "C"
