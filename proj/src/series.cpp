#include "qmatrank/series.hpp"

#include <stdexcept>

#include "json.hpp"

namespace qmr {

namespace {

std::vector<BigInt> truncated_mul(const std::vector<BigInt>& a,
                                  const std::vector<BigInt>& b, size_t len) {
    std::vector<BigInt> out(len);
    for (size_t i = 0; i < a.size() && i < len; ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size() && i + j < len; ++j)
            out[i + j] += a[i] * b[j];
    }
    return out;
}

}  // namespace

long long count_avoiders(const std::vector<Perm>& patterns, int n) {
    if (n < 0 || n > 9)
        throw std::invalid_argument("count_avoiders: exhaustive scan needs 0 <= n <= 9");
    if (n == 0) return 1;
    long long cnt = 0;
    for (const Perm& w : all_perms(n))
        if (w.avoids_all(patterns)) ++cnt;
    return cnt;
}

SeriesPrefix vexillary_series(int nmax) {
    if (nmax < 0 || nmax > 9)
        throw std::invalid_argument("vexillary_series: prefix limited to n <= 9");
    std::vector<Perm> pat{Perm::parse("2143")};
    SeriesPrefix v;
    v.coeffs.reserve(nmax + 1);
    for (int n = 0; n <= nmax; ++n) v.coeffs.emplace_back(count_avoiders(pat, n));
    return v;
}

SeriesPrefix i_from_v(const SeriesPrefix& v) {
    const size_t len = v.coeffs.size();
    SeriesPrefix out;
    out.coeffs.assign(len, 0);
    for (size_t n = 0; n < len; ++n) {
        BigInt c = v.coeffs[n];
        if (n >= 1) c -= 2 * v.coeffs[n - 1];
        if (n >= 2) c += v.coeffs[n - 2];
        if (n == 1) c += 1;
        if (n == 0) c -= 1;
        out.coeffs[n] = c;
    }
    return out;
}

SeriesPrefix sv_from_v(const SeriesPrefix& v) {
    const size_t len = v.coeffs.size();
    std::vector<BigInt> v2 = truncated_mul(v.coeffs, v.coeffs, len);
    SeriesPrefix out;
    out.coeffs.assign(len, 0);
    for (size_t n = 0; n < len; ++n) {
        BigInt c = v2[n];
        if (n >= 1) c -= v2[n - 1];
        c -= v.coeffs[n];
        c += 1;  // geometric series coefficient
        out.coeffs[n] = c;
    }
    return out;
}

std::string series_json(int nmax) {
    SeriesPrefix v = vexillary_series(nmax);
    SeriesPrefix i = i_from_v(v);
    SeriesPrefix sv = sv_from_v(v);
    nlohmann::json j;
    auto emit = [](const SeriesPrefix& s) {
        nlohmann::json arr = nlohmann::json::array();
        for (const BigInt& c : s.coeffs) arr.push_back(c.str());
        return arr;
    };
    j["V"] = emit(v);
    j["I"] = emit(i);
    j["SV"] = emit(sv);
    return j.dump();
}

}  // namespace qmr
