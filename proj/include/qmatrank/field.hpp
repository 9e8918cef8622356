#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace qmr {

// Arithmetic in GF(p^k), q = p^k <= 2^20.  Elements are indices 0..q-1 under
// the base-p digit encoding: the element sum_i d_i x^i has index sum_i d_i p^i,
// so 0 and 1 are the additive and multiplicative identities for every q.
// The modulus is the lexicographically least monic irreducible of degree k
// (coefficient tuple compared from x^{k-1} down to x^0), which makes the
// construction deterministic; GF(4) uses x^2+x+1, GF(8) x^3+x+1, GF(9) x^2+1,
// GF(16) x^4+x+1.
class Field {
  public:
    static constexpr long long max_q = 1 << 20;
    static constexpr long long table_limit = 1024;  // op tables built when q <= this

    // q must be a prime power <= max_q
    static Field make(long long q);

    long long q() const { return q_; }
    long long p() const { return p_; }
    int k() const { return k_; }
    // modulus coefficients, index i = coefficient of x^i, size k+1, monic
    const std::vector<int>& modulus() const { return modulus_; }

    long long add(long long a, long long b) const;
    long long sub(long long a, long long b) const;
    long long neg(long long a) const;
    long long mul(long long a, long long b) const;
    long long inv(long long a) const;  // a != 0
    long long pow(long long a, long long e) const;

    bool has_tables() const { return !mul_table_.empty(); }
    // raw tables for hot loops; valid only when has_tables()
    const uint16_t* add_table() const { return add_table_.data(); }
    const uint16_t* mul_table() const { return mul_table_.data(); }
    const uint16_t* neg_table() const { return neg_table_.data(); }
    const uint16_t* inv_table() const { return inv_table_.data(); }

  private:
    long long q_ = 0, p_ = 0;
    int k_ = 0;
    std::vector<int> modulus_;
    std::vector<uint16_t> add_table_, mul_table_, neg_table_, inv_table_;

    std::vector<int> digits(long long a) const;
    long long from_digits(const std::vector<int>& d) const;
    long long mul_generic(long long a, long long b) const;
    long long add_generic(long long a, long long b) const;
};

}  // namespace qmr
