/* C interface to the rank-count library.  All functions return qmr_status
 * unless noted; on failure qmr_last_error() describes the problem for the
 * calling thread.  Strings returned through char** are heap copies owned by
 * the caller and released with qmr_string_free. */
#ifndef QMATRANK_H
#define QMATRANK_H

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qmr_status {
    QMR_OK = 0,
    QMR_ERR_PARSE = 1,      /* unreadable board / permutation / number */
    QMR_ERR_DOMAIN = 2,     /* arguments outside a routine's domain */
    QMR_ERR_INFEASIBLE = 3, /* oracle refused (caps or state budget) */
    QMR_ERR_IO = 4,         /* cache file problems */
    QMR_ERR_INTERNAL = 5    /* invariant breach; please report */
} qmr_status;

typedef struct qmr_board qmr_board;
typedef struct qmr_poly qmr_poly;
typedef struct qmr_perm qmr_perm;
typedef struct qmr_counter qmr_counter;
typedef struct qmr_count_result qmr_count_result;

const char* qmr_version(void);
/* last failure message for the calling thread; empty string when none */
const char* qmr_last_error(void);
void qmr_string_free(char* s);

/* ---- boards ------------------------------------------------------- */
/* grammar: coords:M,N:(i,j);...  lambda:N:a,b,c  skew:N:a,b/c
 *          rothe:WORD  hull:WORD  each with optional :complement suffix */
qmr_status qmr_board_parse(const char* spec, qmr_board** out);
void qmr_board_free(qmr_board* b);
int qmr_board_rows(const qmr_board* b);
int qmr_board_cols(const qmr_board* b);
int qmr_board_cell_count(const qmr_board* b);
int qmr_board_contains(const qmr_board* b, int i, int j);
int qmr_board_ne_closed(const qmr_board* b);
qmr_status qmr_board_complement(const qmr_board* b, qmr_board** out);
qmr_status qmr_board_transpose(const qmr_board* b, qmr_board** out);
qmr_status qmr_board_format(const qmr_board* b, char** out);

/* ---- polynomials over q (integer Laurent) ------------------------- */
void qmr_poly_free(qmr_poly* p);
qmr_status qmr_poly_to_string(const qmr_poly* p, char** out);
qmr_status qmr_poly_factored_string(const qmr_poly* p, char** out);
qmr_status qmr_poly_to_json(const qmr_poly* p, char** out);
/* decimal value at integer q */
qmr_status qmr_poly_eval(const qmr_poly* p, long long q, char** out);
int qmr_poly_equal(const qmr_poly* a, const qmr_poly* b);

/* ---- counting ------------------------------------------------------ */
/* cache_path may be NULL; threads <= 0 means single-threaded; sample_qs
 * is an optional comma-separated list of prime powers overriding the
 * default sampling sequence (NULL for the default) */
qmr_status qmr_counter_new(long long oracle_budget, int threads, int validate,
                           const char* cache_path, const char* sample_qs,
                           qmr_counter** out);
void qmr_counter_free(qmr_counter* c);
qmr_status qmr_count_auto(qmr_counter* c, const qmr_board* s, int r,
                          qmr_count_result** out);
/* exact value at one prime power via the subspace oracle */
qmr_status qmr_count_at(qmr_counter* c, const qmr_board* s, int r, long long q,
                        char** decimal_out);
/* 1 when count/(q-1)^r matches the complement rook count mod q-1 */
qmr_status qmr_congruence_holds(qmr_counter* c, const qmr_board* s, int r,
                                long long q, int* out);

void qmr_result_free(qmr_count_result* r);
/* 0 = polynomial, 1 = samples-only */
int qmr_result_kind(const qmr_count_result* r);
/* static string: formula | reduction | oracle+interpolation */
const char* qmr_result_provenance(const qmr_count_result* r);
qmr_status qmr_result_poly(const qmr_count_result* r, qmr_poly** out);
/* kind, polynomial or sample table, quasi split, expansion trace */
qmr_status qmr_result_json(const qmr_count_result* r, char** out);

/* rank-1 closed form; needs min(rows, cols) <= 20 */
qmr_status qmr_rank1_poly(const qmr_board* s, qmr_poly** out);
qmr_status qmr_invertible_poly(int n, qmr_poly** out);

/* ---- rook placements ----------------------------------------------- */
/* convention: 0 = SE, 1 = NE */
qmr_status qmr_rook_poly(const qmr_board* b, int r, int convention,
                         qmr_poly** out);
qmr_status qmr_rook_count(const qmr_board* b, int r, long long* out);

/* ---- permutations --------------------------------------------------- */
qmr_status qmr_perm_parse(const char* word, qmr_perm** out);
void qmr_perm_free(qmr_perm* w);
qmr_status qmr_perm_to_string(const qmr_perm* w, char** out);
int qmr_perm_size(const qmr_perm* w);
long long qmr_perm_inversions(const qmr_perm* w);
qmr_status qmr_perm_inverse(const qmr_perm* w, qmr_perm** out);
qmr_status qmr_perm_rothe(const qmr_perm* w, qmr_board** out);
qmr_status qmr_perm_hull(const qmr_perm* w, qmr_board** out);
int qmr_perm_is_vexillary(const qmr_perm* w);
int qmr_perm_is_skew_vexillary(const qmr_perm* w);
/* json: {"k":int, "lambda":[...], "mu":[...], "v":"word"}; fails with
 * QMR_ERR_DOMAIN when the permutation is not skew-vexillary */
qmr_status qmr_perm_sv_summary(const qmr_perm* w, char** out);
int qmr_bruhat_leq(const qmr_perm* u, const qmr_perm* w);
/* rank generating polynomial of the upper Bruhat interval; n <= 8 */
qmr_status qmr_poincare_poly(const qmr_perm* w, qmr_poly** out);

/* ---- series and verification ---------------------------------------- */
/* {"V": [...], "I": [...], "SV": [...]} up to length nmax <= 9 */
qmr_status qmr_series_json(int nmax, char** out);
/* claims: rank-factorization poincare-bound hull-bound rook-equinumerosity
 * rank1-t-positivity; *passed set to 0/1 */
qmr_status qmr_verify_run(const char* claim, int n_max, long long oracle_budget,
                          char** report_json, int* passed);

#ifdef __cplusplus
}
#endif

#endif /* QMATRANK_H */
