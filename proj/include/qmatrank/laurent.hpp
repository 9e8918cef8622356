#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "qmatrank/bigint.hpp"

namespace qmr {

// Laurent polynomial in one variable q with arbitrary-precision integer
// coefficients.  Stored sparsely as exponent -> nonzero coefficient, so
// exponents may be negative; most consumers produce honest polynomials and
// can assert is_polynomial().
class Laurent {
  public:
    Laurent() = default;
    explicit Laurent(const BigInt& c) {
        if (c != 0) terms_[0] = c;
    }
    explicit Laurent(long long c) : Laurent(BigInt(c)) {}

    static Laurent monomial(const BigInt& c, int e) {
        Laurent p;
        if (c != 0) p.terms_[e] = c;
        return p;
    }
    // the variable itself
    static Laurent q() { return monomial(1, 1); }
    // 1 + q + ... + q^{m-1}; zero when m <= 0
    static Laurent bracket(int m);

    bool is_zero() const { return terms_.empty(); }
    bool is_polynomial() const { return terms_.empty() || terms_.begin()->first >= 0; }
    // min/max exponent of a nonzero term; 0 for the zero polynomial
    int min_exp() const { return terms_.empty() ? 0 : terms_.begin()->first; }
    int max_exp() const { return terms_.empty() ? 0 : terms_.rbegin()->first; }
    int degree() const { return max_exp(); }

    const std::map<int, BigInt>& terms() const { return terms_; }
    BigInt coeff(int e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? BigInt(0) : it->second;
    }

    bool operator==(const Laurent&) const = default;

    Laurent& operator+=(const Laurent& o);
    Laurent& operator-=(const Laurent& o);
    Laurent operator-() const;
    friend Laurent operator+(Laurent a, const Laurent& b) { return a += b; }
    friend Laurent operator-(Laurent a, const Laurent& b) { return a -= b; }
    friend Laurent operator*(const Laurent& a, const Laurent& b);
    Laurent& operator*=(const Laurent& o) { return *this = *this * o; }

    // multiply by q^e
    Laurent shifted(int e) const;
    // substitute q -> q^{-1}
    Laurent subst_qinv() const;
    Laurent pow(int k) const;

    // exact evaluation; requires is_polynomial()
    BigInt eval(const BigInt& x) const;
    // evaluation allowing negative exponents; x != 0
    BigRat eval_rational(const BigRat& x) const;

    bool coeffs_nonneg() const;
    // coefficient-wise a <= b
    static bool dominates(const Laurent& a, const Laurent& b);

    // largest e with (q-1)^e dividing *this, together with the quotient.
    // The zero polynomial reports (0, 0).
    std::pair<int, Laurent> factor_qminus1() const;
    // exact division; nullopt when the division leaves a remainder
    std::optional<Laurent> divided_by(const Laurent& d) const;

    // coefficients of p in the basis t = q - 1 (index = power of t);
    // requires is_polynomial()
    std::vector<BigInt> in_t_basis() const;

    // "q^7+2q^6" style, descending exponents; "0" for zero
    std::string to_string() const;
    // "(q-1)^2 * q^3 * (q+1)" with maximal (q-1)- and q-power extraction
    std::string factored_string() const;
    // {"7":"1","6":"2"}: exponent keys, decimal coefficient values
    std::string to_json() const;
    static Laurent from_json(const std::string& text);

  private:
    std::map<int, BigInt> terms_;
    void put(int e, const BigInt& c) {
        if (c != 0) terms_[e] = c;
    }
};

// -------- sampling and exact interpolation --------

struct Sample {
    long long q = 0;
    BigInt value;
    bool operator==(const Sample&) const = default;
};
using SampleTable = std::vector<Sample>;

struct InterpolationError {
    std::string reason;
};

// Exact reconstruction of an integer polynomial from point samples. Fits the
// first degree_bound+1 samples, then requires integral coefficients and
// agreement with every remaining sample.
// Pre: samples.size() >= degree_bound + 2, all q distinct.
std::variant<Laurent, InterpolationError> interpolate(const SampleTable& samples,
                                                      int degree_bound);

// Parity-of-q quasi-polynomial fit: one polynomial per residue class mod 2.
struct QuasiFit {
    std::map<int, Laurent> class_polys;  // parity (0/1) -> fitted polynomial
    bool consistent = false;             // both classes fitted and validated
    std::string note;                    // records insufficiency or fit failure
    bool is_genuine_quasi() const {
        return consistent && class_polys.size() == 2 &&
               !(class_polys.at(0) == class_polys.at(1));
    }
};

// Never throws on thin data; the returned fit records what could and could
// not be established from the given samples.
QuasiFit detect_quasi(const SampleTable& samples, int degree_bound);

// prime powers 2,3,4,5,7,8,9,11,13,16,... up to and including limit
std::vector<long long> prime_powers(long long limit);
bool is_prime_power(long long n, long long* p_out = nullptr, int* k_out = nullptr);

}  // namespace qmr
