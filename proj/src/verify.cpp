#include "qmatrank/verify.hpp"

#include <algorithm>
#include <chrono>
#include <random>
#include <set>
#include <stdexcept>

#include "json.hpp"
#include "qmatrank/rooks.hpp"

namespace qmr {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

// orbit of w under inverse and reverse-complement; all four maps preserve
// the counted quantities in every harness below
std::vector<Perm> symmetry_orbit(const Perm& w) {
    std::set<Perm> orb{w, w.inverse(), w.reverse_complement(),
                       w.reverse_complement().inverse()};
    return {orb.begin(), orb.end()};
}

bool is_orbit_rep(const Perm& w, const std::vector<Perm>& orbit) {
    return w == orbit.front();
}

Laurent quotient_by_qm1_power(const Laurent& poly, int r, bool* ok) {
    Laurent qm1 = Laurent::q() - Laurent::monomial(1, 0);
    auto quo = poly.divided_by(qm1.pow(r));
    *ok = quo.has_value();
    return quo.value_or(Laurent{});
}

void record(VerificationReport& rep, const std::string& witness,
            const std::string& expected, const std::string& actual) {
    rep.failures.push_back({witness, expected, actual});
}

}  // namespace

std::string VerificationReport::to_json() const {
    nlohmann::json j;
    j["claim"] = claim;
    j["n_lo"] = n_lo;
    j["n_hi"] = n_hi;
    j["instances"] = instances;
    j["seconds"] = seconds;
    j["passed"] = passed();
    nlohmann::json jf = nlohmann::json::array();
    for (const auto& f : failures)
        jf.push_back({{"witness", f.witness},
                      {"expected", f.expected},
                      {"actual", f.actual}});
    j["failures"] = std::move(jf);
    return j.dump();
}

VerificationReport verify_rank_factorization(int n_max, Counter& counter) {
    if (n_max < 1 || n_max > 6)
        throw std::invalid_argument("verify_rank_factorization: need 1 <= n_max <= 6");
    auto t0 = Clock::now();
    VerificationReport rep;
    rep.claim = "rank-factorization";
    rep.n_hi = n_max;

    for (int n = 1; n <= n_max; ++n) {
        for (const Perm& w : all_perms(n)) {
            auto orbit = symmetry_orbit(w);
            if (!is_orbit_rep(w, orbit)) continue;
            Board rw = rothe_diagram(w);
            std::vector<std::optional<Laurent>> polys(n + 1);
            for (int r = 0; r <= n; ++r) {
                CountResult res = counter.count_auto(rw, r);
                rep.instances += static_cast<long long>(orbit.size());
                if (res.kind != CountResult::Kind::Polynomial) {
                    record(rep, w.to_string() + " r=" + std::to_string(r),
                           "polynomial count", "samples only");
                    continue;
                }
                polys[r] = res.poly;
                bool ok = false;
                Laurent quo = quotient_by_qm1_power(res.poly, r, &ok);
                if (!ok) {
                    record(rep, w.to_string() + " r=" + std::to_string(r),
                           "(q-1)^r divides the count", res.poly.to_string());
                } else if (!quo.coeffs_nonneg()) {
                    record(rep, w.to_string() + " r=" + std::to_string(r),
                           "nonnegative quotient coefficients", quo.to_string());
                }
            }
            // the skipped images really do carry the same counts
            for (const Perm& u : orbit) {
                if (u == w) continue;
                Board ru = rothe_diagram(u);
                for (int r = 0; r <= n; ++r) {
                    if (!polys[r]) continue;
                    BigInt direct = counter.count_at(ru, r, 2);
                    if (direct != polys[r]->eval(2))
                        record(rep, u.to_string() + " r=" + std::to_string(r),
                               polys[r]->eval(2).str() + " (via representative "
                                   + w.to_string() + ")",
                               direct.str());
                }
            }
        }
    }
    rep.seconds = elapsed(t0);
    return rep;
}

VerificationReport verify_poincare_bound(int n_max, Counter& counter) {
    if (n_max < 1 || n_max > 6)
        throw std::invalid_argument("verify_poincare_bound: need 1 <= n_max <= 6");
    auto t0 = Clock::now();
    VerificationReport rep;
    rep.claim = "poincare-bound";
    rep.n_hi = n_max;
    const auto& patterns = hull_obstructions();

    for (int n = 1; n <= n_max; ++n) {
        for (const Perm& w : all_perms(n)) {
            auto orbit = symmetry_orbit(w);
            if (!is_orbit_rep(w, orbit)) continue;
            rep.instances += static_cast<long long>(orbit.size());
            CountResult res = counter.count_auto(rothe_diagram(w), n);
            if (res.kind != CountResult::Kind::Polynomial) {
                record(rep, w.to_string(), "polynomial count", "samples only");
                continue;
            }
            bool ok = false;
            Laurent quo = quotient_by_qm1_power(res.poly, n, &ok);
            if (!ok) {
                record(rep, w.to_string(), "(q-1)^n divides the count",
                       res.poly.to_string());
                continue;
            }
            int shift = n * (n - 1) / 2 - w.inversions();
            Laurent bound = poincare_upper(w).shifted(shift);
            if (!Laurent::dominates(quo, bound)) {
                record(rep, w.to_string(),
                       "quotient <= " + bound.to_string(), quo.to_string());
                continue;
            }
            bool equal = quo == bound;
            bool avoids = w.avoids_all(patterns);
            if (equal != avoids)
                record(rep, w.to_string(),
                       avoids ? "equality (pattern avoider)"
                              : "strict inequality (pattern container)",
                       equal ? quo.to_string() + " == bound"
                             : quo.to_string() + " != " + bound.to_string());
        }
    }
    rep.seconds = elapsed(t0);
    return rep;
}

VerificationReport verify_hull_bound(int n_max, Counter& counter) {
    if (n_max < 1 || n_max > 5)
        throw std::invalid_argument("verify_hull_bound: need 1 <= n_max <= 5");
    auto t0 = Clock::now();
    VerificationReport rep;
    rep.claim = "hull-bound";
    rep.n_hi = n_max;
    const auto& patterns = hull_obstructions();

    // the full-rank statement fails at lower rank: w = 21, r = 1 gives
    // quotients 2q+1 on the diagram side but 2 on the hull side
    {
        Perm w21 = Perm::parse("21");
        Laurent lhs = counter.count_auto(rothe_diagram(w21), 1).poly;
        Laurent rhs = counter.count_auto(left_hull(w21).complement(), 1).poly;
        bool ok1 = false, ok2 = false;
        Laurent lq = quotient_by_qm1_power(lhs, 1, &ok1);
        Laurent rq = quotient_by_qm1_power(rhs, 1, &ok2);
        Laurent expect_l = Laurent::monomial(2, 1) + Laurent::monomial(1, 0);
        Laurent expect_r = Laurent::monomial(2, 0);
        ++rep.instances;
        if (!ok1 || !ok2 || !(lq == expect_l) || !(rq == expect_r))
            record(rep, "21 r=1", "quotients 2q+1 vs 2",
                   lq.to_string() + " vs " + rq.to_string());
    }

    for (int n = 1; n <= n_max; ++n) {
        for (const Perm& w : all_perms(n)) {
            auto orbit = symmetry_orbit(w);
            if (!is_orbit_rep(w, orbit)) continue;
            rep.instances += static_cast<long long>(orbit.size());
            Board rw = rothe_diagram(w);
            Board hull = left_hull(w);
            Board off_hull = hull.complement();

            if (w.avoids_all({Perm::parse("1324")})
                && off_hull.cell_count() < rw.cell_count())
                record(rep, w.to_string(),
                       "off-hull cells >= diagram cells",
                       std::to_string(off_hull.cell_count()) + " < "
                           + std::to_string(rw.cell_count()));

            CountResult lres = counter.count_auto(rw, n);
            CountResult rres = counter.count_auto(off_hull, n);
            if (lres.kind != CountResult::Kind::Polynomial
                || rres.kind != CountResult::Kind::Polynomial) {
                record(rep, w.to_string(), "polynomial counts", "samples only");
                continue;
            }
            bool ok1 = false, ok2 = false;
            Laurent lq = quotient_by_qm1_power(lres.poly, n, &ok1);
            Laurent rq = quotient_by_qm1_power(rres.poly, n, &ok2);
            if (!ok1 || !ok2) {
                record(rep, w.to_string(), "(q-1)^n divides both counts",
                       lres.poly.to_string() + " / " + rres.poly.to_string());
                continue;
            }
            int a_w = n * n - hull.cell_count() - w.inversions();
            Laurent bound = rq.shifted(a_w);
            if (!Laurent::dominates(lq, bound)) {
                record(rep, w.to_string(), "quotient <= " + bound.to_string(),
                       lq.to_string());
                continue;
            }
            bool equal = lq == bound;
            bool avoids = w.avoids_all(patterns);
            if (equal != avoids)
                record(rep, w.to_string(),
                       avoids ? "equality (pattern avoider)"
                              : "strict inequality (pattern container)",
                       equal ? "equal polynomials" : "distinct polynomials");
        }
    }
    rep.seconds = elapsed(t0);
    return rep;
}

VerificationReport verify_rook_equinumerosity(int n_max) {
    if (n_max < 1 || n_max > 6)
        throw std::invalid_argument("verify_rook_equinumerosity: need 1 <= n_max <= 6");
    auto t0 = Clock::now();
    VerificationReport rep;
    rep.claim = "rook-equinumerosity";
    rep.n_hi = n_max;
    const auto& patterns = hull_obstructions();

    for (int n = 1; n <= n_max; ++n) {
        for (const Perm& w : all_perms(n)) {
            auto orbit = symmetry_orbit(w);
            if (!is_orbit_rep(w, orbit)) continue;
            rep.instances += static_cast<long long>(orbit.size());
            long long on_diagram_complement =
                placement_count(rothe_diagram(w).complement(), n);
            long long on_hull = placement_count(left_hull(w), n);
            bool equal = on_diagram_complement == on_hull;
            bool avoids = w.avoids_all(patterns);
            if (equal != avoids)
                record(rep, w.to_string(),
                       avoids ? "equal rook counts" : "distinct rook counts",
                       std::to_string(on_diagram_complement) + " vs "
                           + std::to_string(on_hull));
        }
    }
    rep.seconds = elapsed(t0);
    return rep;
}

VerificationReport verify_rank1_t_positivity(int random_boards, unsigned seed) {
    auto t0 = Clock::now();
    VerificationReport rep;
    rep.claim = "rank1-t-positivity";
    rep.n_lo = 4;
    rep.n_hi = 6;

    auto check = [&](const Board& b, const std::string& label) {
        ++rep.instances;
        Laurent poly = count_rank1(b);
        for (const BigInt& c : poly.in_t_basis())
            if (c < 0) {
                record(rep, label, "nonnegative t-expansion", poly.to_string());
                return;
            }
    };

    for (uint32_t mask = 0; mask < (uint32_t{1} << 16); ++mask) {
        std::vector<Cell> cells;
        for (int bit = 0; bit < 16; ++bit)
            if (mask & (uint32_t{1} << bit))
                cells.push_back({bit / 4 + 1, bit % 4 + 1});
        check(Board(4, 4, cells), "4x4 mask " + std::to_string(mask));
    }

    std::mt19937 rng(seed);
    for (int trial = 0; trial < random_boards; ++trial) {
        std::vector<Cell> cells;
        for (int i = 1; i <= 6; ++i)
            for (int j = 1; j <= 6; ++j)
                if (rng() & 1) cells.push_back({i, j});
        check(Board(6, 6, cells), "6x6 trial " + std::to_string(trial));
    }

    rep.seconds = elapsed(t0);
    return rep;
}

VerificationReport run_verification(const std::string& claim, int n_max,
                                    Counter& counter) {
    if (claim == "rank-factorization") return verify_rank_factorization(n_max, counter);
    if (claim == "poincare-bound") return verify_poincare_bound(n_max, counter);
    if (claim == "hull-bound") return verify_hull_bound(n_max, counter);
    if (claim == "rook-equinumerosity") return verify_rook_equinumerosity(n_max);
    if (claim == "rank1-t-positivity")
        return verify_rank1_t_positivity(std::max(1, n_max) * 40, 20260815u);
    throw std::invalid_argument("unknown claim: " + claim);
}

}  // namespace qmr
