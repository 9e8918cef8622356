#include "qmatrank/field.hpp"

#include <algorithm>
#include <stdexcept>

#include "qmatrank/laurent.hpp"  // is_prime_power

namespace qmr {

namespace {

// dense coefficient vectors over F_p, index = degree
using Poly = std::vector<int>;

void ptrim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly pmulmod(const Poly& a, const Poly& b, const Poly& mod, long long p) {
    Poly r(a.size() + b.size(), 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (size_t j = 0; j < b.size(); ++j)
            r[i + j] = static_cast<int>((r[i + j] + 1LL * a[i] * b[j]) % p);
    }
    // reduce modulo the monic polynomial mod
    const int dm = static_cast<int>(mod.size()) - 1;
    for (int d = static_cast<int>(r.size()) - 1; d >= dm; --d) {
        int c = r[d];
        if (!c) continue;
        r[d] = 0;
        for (int i = 0; i < dm; ++i)
            r[d - dm + i] = static_cast<int>(((r[d - dm + i] - 1LL * c * mod[i]) % p + p) % p);
    }
    r.resize(dm);
    ptrim(r);
    return r;
}

Poly ppowmod(Poly base, long long e, const Poly& mod, long long p) {
    Poly r{1};
    while (e > 0) {
        if (e & 1) r = pmulmod(r, base, mod, p);
        base = pmulmod(base, base, mod, p);
        e >>= 1;
    }
    return r;
}

Poly pgcd(Poly a, Poly b, long long p) {
    auto inv_mod_p = [p](long long x) {
        long long r = 1, base = ((x % p) + p) % p, e = p - 2;
        while (e) {
            if (e & 1) r = r * base % p;
            base = base * base % p;
            e >>= 1;
        }
        return r;
    };
    ptrim(a);
    ptrim(b);
    while (!b.empty()) {
        // a mod b
        long long lead_inv = inv_mod_p(b.back());
        while (a.size() >= b.size() && !a.empty()) {
            long long c = a.back() * lead_inv % p;
            int shift = static_cast<int>(a.size() - b.size());
            for (size_t i = 0; i < b.size(); ++i)
                a[shift + i] = static_cast<int>(((a[shift + i] - c * b[i]) % p + p) % p);
            ptrim(a);
            if (a.empty()) break;
        }
        std::swap(a, b);
    }
    return a;
}

// Rabin irreducibility: f (monic, degree k) over F_p is irreducible iff
// x^{p^k} == x mod f and gcd(x^{p^{k/t}} - x, f) = 1 for each prime t | k.
bool irreducible(const Poly& f, long long p, int k) {
    if (k == 1) return true;
    Poly x{0, 1};
    std::vector<int> prime_divs;
    int kk = k;
    for (int t = 2; t * t <= kk; ++t)
        while (kk % t == 0) {
            if (prime_divs.empty() || prime_divs.back() != t) prime_divs.push_back(t);
            kk /= t;
        }
    if (kk > 1) prime_divs.push_back(kk);
    for (int t : prime_divs) {
        long long e = 1;
        for (int i = 0; i < k / t; ++i) e *= p;
        Poly g = ppowmod(x, e, f, p);  // x^{p^{k/t}} mod f
        // g - x
        Poly diff = g;
        if (diff.size() < 2) diff.resize(2, 0);
        diff[1] = static_cast<int>(((diff[1] - 1) % p + p) % p);
        ptrim(diff);
        Poly d = pgcd(f, diff, p);
        if (d.size() != 1) return false;
    }
    long long e = 1;
    for (int i = 0; i < k; ++i) e *= p;
    Poly g = ppowmod(x, e, f, p);
    Poly diff = g;
    if (diff.size() < 2) diff.resize(2, 0);
    diff[1] = static_cast<int>(((diff[1] - 1) % p + p) % p);
    ptrim(diff);
    return diff.empty();
}

}  // namespace

std::vector<int> Field::digits(long long a) const {
    std::vector<int> d(k_, 0);
    for (int i = 0; i < k_; ++i) {
        d[i] = static_cast<int>(a % p_);
        a /= p_;
    }
    return d;
}

long long Field::from_digits(const std::vector<int>& d) const {
    long long a = 0;
    for (int i = k_ - 1; i >= 0; --i) a = a * p_ + (i < static_cast<int>(d.size()) ? d[i] : 0);
    return a;
}

long long Field::add_generic(long long a, long long b) const {
    auto da = digits(a), db = digits(b);
    for (int i = 0; i < k_; ++i) da[i] = static_cast<int>((da[i] + db[i]) % p_);
    return from_digits(da);
}

long long Field::mul_generic(long long a, long long b) const {
    Poly pa = digits(a), pb = digits(b);
    ptrim(pa);
    ptrim(pb);
    Poly r = pmulmod(pa, pb, modulus_, p_);
    std::vector<int> d(r.begin(), r.end());
    return from_digits(d);
}

Field Field::make(long long q) {
    long long p;
    int k;
    if (q < 2 || q > max_q || !is_prime_power(q, &p, &k))
        throw std::invalid_argument("Field::make: q must be a prime power in [2, 2^20]");
    Field f;
    f.q_ = q;
    f.p_ = p;
    f.k_ = k;
    if (k == 1) {
        f.modulus_ = {0, 1};  // x - 0 placeholder; unused for prime fields
    } else {
        // scan monic degree-k polynomials in lex order of (c_{k-1},...,c_0)
        long long total = 1;
        for (int i = 0; i < k; ++i) total *= p;
        bool found = false;
        for (long long m = 0; m < total && !found; ++m) {
            Poly cand(k + 1, 0);
            cand[k] = 1;
            long long t = m;
            for (int i = k - 1; i >= 0; --i) {
                // digit for x^i: most significant digit of m goes to x^{k-1}
                long long place = 1;
                for (int j = 0; j < i; ++j) place *= p;
                cand[i] = static_cast<int>(t / place);
                t %= place;
            }
            if (cand[0] == 0) continue;  // reducible: divisible by x
            if (irreducible(cand, p, k)) {
                f.modulus_ = cand;
                found = true;
            }
        }
        if (!found) throw std::logic_error("Field::make: no irreducible found");
    }
    if (q <= table_limit) {
        f.add_table_.resize(q * q);
        f.mul_table_.resize(q * q);
        f.neg_table_.resize(q);
        f.inv_table_.resize(q);
        for (long long a = 0; a < q; ++a)
            for (long long b = 0; b < q; ++b) {
                f.add_table_[a * q + b] = static_cast<uint16_t>(f.add_generic(a, b));
                f.mul_table_[a * q + b] = static_cast<uint16_t>(f.mul_generic(a, b));
            }
        for (long long a = 0; a < q; ++a) {
            for (long long b = 0; b < q; ++b) {
                if (f.add_table_[a * q + b] == 0) f.neg_table_[a] = static_cast<uint16_t>(b);
                if (a != 0 && f.mul_table_[a * q + b] == 1)
                    f.inv_table_[a] = static_cast<uint16_t>(b);
            }
        }
        f.inv_table_[0] = 0;
    }
    return f;
}

long long Field::add(long long a, long long b) const {
    if (has_tables()) return add_table_[a * q_ + b];
    return add_generic(a, b);
}

long long Field::neg(long long a) const {
    if (has_tables()) return neg_table_[a];
    auto d = digits(a);
    for (auto& x : d) x = static_cast<int>((p_ - x) % p_);
    return from_digits(d);
}

long long Field::sub(long long a, long long b) const { return add(a, neg(b)); }

long long Field::mul(long long a, long long b) const {
    if (has_tables()) return mul_table_[a * q_ + b];
    return mul_generic(a, b);
}

long long Field::pow(long long a, long long e) const {
    long long r = 1;
    while (e > 0) {
        if (e & 1) r = mul(r, a);
        a = mul(a, a);
        e >>= 1;
    }
    return r;
}

long long Field::inv(long long a) const {
    if (a == 0) throw std::domain_error("Field::inv: zero");
    if (has_tables()) return inv_table_[a];
    return pow(a, q_ - 2);
}

}  // namespace qmr
