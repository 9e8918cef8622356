#include "qmatrank/laurent.hpp"

#include <nlohmann/json.hpp>

#include <sstream>
#include <stdexcept>

namespace qmr {

Laurent Laurent::bracket(int m) {
    Laurent p;
    for (int e = 0; e < m; ++e) p.terms_[e] = 1;
    return p;
}

Laurent& Laurent::operator+=(const Laurent& o) {
    for (const auto& [e, c] : o.terms_) {
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            terms_.emplace(e, c);
        } else {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }
    return *this;
}

Laurent& Laurent::operator-=(const Laurent& o) {
    for (const auto& [e, c] : o.terms_) {
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            terms_.emplace(e, -c);
        } else {
            it->second -= c;
            if (it->second == 0) terms_.erase(it);
        }
    }
    return *this;
}

Laurent Laurent::operator-() const {
    Laurent r;
    for (const auto& [e, c] : terms_) r.terms_[e] = -c;
    return r;
}

Laurent operator*(const Laurent& a, const Laurent& b) {
    Laurent r;
    for (const auto& [ea, ca] : a.terms_)
        for (const auto& [eb, cb] : b.terms_) {
            auto it = r.terms_.find(ea + eb);
            if (it == r.terms_.end()) {
                r.terms_.emplace(ea + eb, ca * cb);
            } else {
                it->second += ca * cb;
                if (it->second == 0) r.terms_.erase(it);
            }
        }
    return r;
}

Laurent Laurent::shifted(int e) const {
    Laurent r;
    for (const auto& [ee, c] : terms_) r.terms_[ee + e] = c;
    return r;
}

Laurent Laurent::subst_qinv() const {
    Laurent r;
    for (const auto& [e, c] : terms_) r.terms_[-e] = c;
    return r;
}

Laurent Laurent::pow(int k) const {
    if (k < 0) throw std::invalid_argument("Laurent::pow: negative exponent");
    Laurent r(1);
    Laurent base = *this;
    while (k > 0) {
        if (k & 1) r = r * base;
        base = base * base;
        k >>= 1;
    }
    return r;
}

BigInt Laurent::eval(const BigInt& x) const {
    if (!is_polynomial()) throw std::domain_error("Laurent::eval: negative exponents");
    // sparse Horner over descending exponents
    BigInt acc = 0;
    int prev = -1;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        if (prev >= 0) acc *= big_pow(x, static_cast<unsigned long>(prev - it->first));
        acc += it->second;
        prev = it->first;
    }
    if (prev > 0) acc *= big_pow(x, static_cast<unsigned long>(prev));
    return acc;
}

BigRat Laurent::eval_rational(const BigRat& x) const {
    if (x == 0) throw std::domain_error("Laurent::eval_rational: x == 0");
    BigRat acc = 0;
    BigRat inv = BigRat(1) / x;
    for (const auto& [e, c] : terms_) {
        BigRat p = 1;
        const BigRat& base = e >= 0 ? x : inv;
        for (int i = 0; i < std::abs(e); ++i) p *= base;
        acc += BigRat(c) * p;
    }
    return acc;
}

bool Laurent::coeffs_nonneg() const {
    for (const auto& [e, c] : terms_)
        if (c < 0) return false;
    return true;
}

bool Laurent::dominates(const Laurent& a, const Laurent& b) {
    return (b - a).coeffs_nonneg();
}

std::pair<int, Laurent> Laurent::factor_qminus1() const {
    if (is_zero()) return {0, Laurent()};
    // pull off the q-power so the remaining part is a polynomial with
    // nonzero constant term, then divide out (q-1) while the value at 1 is 0
    int s = min_exp();
    Laurent u = shifted(-s);
    int e = 0;
    while (true) {
        BigInt at1 = 0;
        for (const auto& [ee, c] : u.terms_) at1 += c;
        if (at1 != 0) break;
        // synthetic division by (q-1): iterate coefficients descending
        Laurent v;
        BigInt carry = 0;
        int top = u.max_exp();
        for (int d = top; d >= 1; --d) {
            carry += u.coeff(d);
            if (carry != 0) v.terms_[d - 1] = carry;
        }
        u = std::move(v);
        ++e;
    }
    return {e, u.shifted(s)};
}

std::optional<Laurent> Laurent::divided_by(const Laurent& d) const {
    if (d.is_zero()) throw std::invalid_argument("Laurent::divided_by: zero divisor");
    if (is_zero()) return Laurent();
    // normalize both to honest polynomials; reattach the q-shift at the end
    const int sa = min_exp(), sb = d.min_exp();
    Laurent rem = shifted(-sa);
    const Laurent div = d.shifted(-sb);
    Laurent quot;
    while (!rem.is_zero() && rem.max_exp() >= div.max_exp()) {
        const BigInt& rlead = rem.terms().rbegin()->second;
        const BigInt& dlead = div.terms().rbegin()->second;
        if (rlead % dlead != 0) return std::nullopt;
        Laurent t = monomial(rlead / dlead, rem.max_exp() - div.max_exp());
        quot += t;
        rem -= t * div;
    }
    if (!rem.is_zero()) return std::nullopt;
    return quot.shifted(sa - sb);
}

std::vector<BigInt> Laurent::in_t_basis() const {
    if (!is_polynomial()) throw std::domain_error("Laurent::in_t_basis: negative exponents");
    // Horner in (t+1): process coefficients from the top degree down
    std::vector<BigInt> acc;  // acc[i] = coefficient of t^i
    int top = is_zero() ? -1 : max_exp();
    for (int d = top; d >= 0; --d) {
        // acc = acc * (t + 1) + coeff(d)
        std::vector<BigInt> next(acc.size() + 1, BigInt(0));
        for (size_t i = 0; i < acc.size(); ++i) {
            next[i] += acc[i];
            next[i + 1] += acc[i];
        }
        if (next.empty()) next.resize(1, BigInt(0));
        next[0] += coeff(d);
        acc = std::move(next);
    }
    while (!acc.empty() && acc.back() == 0) acc.pop_back();
    return acc;
}

namespace {

void append_term(std::ostringstream& out, bool first, const BigInt& c, int e) {
    BigInt a = c;
    if (first) {
        if (c < 0) {
            out << "-";
            a = -c;
        }
    } else {
        out << (c < 0 ? "-" : "+");
        a = c < 0 ? BigInt(-c) : c;
    }
    if (e == 0) {
        out << a.str();
        return;
    }
    if (a != 1) out << a.str();
    out << "q";
    if (e != 1) out << "^" << e;
}

}  // namespace

std::string Laurent::to_string() const {
    if (is_zero()) return "0";
    std::ostringstream out;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        append_term(out, first, it->second, it->first);
        first = false;
    }
    return out.str();
}

std::string Laurent::factored_string() const {
    if (is_zero()) return "0";
    auto [e, rest] = factor_qminus1();
    int s = rest.min_exp();
    Laurent inner = rest.shifted(-s);
    std::vector<std::string> parts;
    if (e == 1) parts.push_back("(q-1)");
    if (e > 1) parts.push_back("(q-1)^" + std::to_string(e));
    if (s == 1) parts.push_back("q");
    if (s != 0 && s != 1) parts.push_back("q^" + std::to_string(s));
    if (inner.terms().size() == 1) {
        // bare constant (the q-power was extracted)
        BigInt c = inner.coeff(0);
        if (c != 1 || parts.empty()) parts.push_back(c.str());
    } else {
        parts.push_back("(" + inner.to_string() + ")");
    }
    std::string out;
    for (size_t i = 0; i < parts.size(); ++i) {
        if (i) out += " * ";
        out += parts[i];
    }
    return out;
}

std::string Laurent::to_json() const {
    nlohmann::json j = nlohmann::json::object();
    for (const auto& [e, c] : terms_) j[std::to_string(e)] = c.str();
    return j.dump();
}

Laurent Laurent::from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    if (!j.is_object()) throw std::invalid_argument("polynomial json: object expected");
    Laurent p;
    for (auto it = j.begin(); it != j.end(); ++it) {
        int e = std::stoi(it.key());
        BigInt c(it.value().get<std::string>());
        if (c != 0) p.terms_[e] = c;
    }
    return p;
}

// -------- interpolation --------

std::variant<Laurent, InterpolationError> interpolate(const SampleTable& samples,
                                                      int degree_bound) {
    if (degree_bound < 0) throw std::invalid_argument("interpolate: negative degree bound");
    if (static_cast<int>(samples.size()) < degree_bound + 2)
        throw std::invalid_argument("interpolate: need degree_bound + 2 samples");
    for (size_t i = 0; i < samples.size(); ++i)
        for (size_t j = i + 1; j < samples.size(); ++j)
            if (samples[i].q == samples[j].q)
                throw std::invalid_argument("interpolate: duplicate sample points");

    const int npts = degree_bound + 1;
    // Newton divided differences over the rationals
    std::vector<BigRat> coef(npts);  // Newton coefficients
    std::vector<BigRat> diag(npts);
    for (int i = 0; i < npts; ++i) {
        BigRat v(samples[i].value);
        for (int j = 0; j < i; ++j) {
            v = (v - diag[j]) / BigRat(samples[i].q - samples[j].q);
        }
        diag[i] = v;
        coef[i] = v;
    }
    // expand Newton form to monomial coefficients
    std::vector<BigRat> mono(npts, BigRat(0));
    std::vector<BigRat> basis(1, BigRat(1));  // product (x - q_0)...(x - q_{i-1})
    for (int i = 0; i < npts; ++i) {
        for (size_t d = 0; d < basis.size(); ++d) mono[d] += coef[i] * basis[d];
        if (i + 1 < npts) {
            std::vector<BigRat> nb(basis.size() + 1, BigRat(0));
            for (size_t d = 0; d < basis.size(); ++d) {
                nb[d + 1] += basis[d];
                nb[d] -= basis[d] * BigRat(samples[i].q);
            }
            basis = std::move(nb);
        }
    }
    Laurent p;
    for (int d = 0; d < npts; ++d) {
        if (mono[d] == 0) continue;
        if (boost::multiprecision::denominator(mono[d]) != 1)
            return InterpolationError{"non-integral coefficient at degree " + std::to_string(d)};
        p += Laurent::monomial(boost::multiprecision::numerator(mono[d]), d);
    }
    for (size_t i = npts; i < samples.size(); ++i) {
        if (p.eval(BigInt(samples[i].q)) != samples[i].value)
            return InterpolationError{"held-out sample at q=" + std::to_string(samples[i].q) +
                                      " disagrees with the fit"};
    }
    return p;
}

QuasiFit detect_quasi(const SampleTable& samples, int degree_bound) {
    QuasiFit fit;
    SampleTable cls[2];
    for (const auto& s : samples) cls[s.q & 1].push_back(s);
    bool ok = true;
    for (int parity = 0; parity < 2; ++parity) {
        if (static_cast<int>(cls[parity].size()) < degree_bound + 2) {
            fit.note += (fit.note.empty() ? "" : "; ");
            fit.note += "parity " + std::to_string(parity) + ": " +
                        std::to_string(cls[parity].size()) + " samples, need " +
                        std::to_string(degree_bound + 2);
            ok = false;
            continue;
        }
        auto res = interpolate(cls[parity], degree_bound);
        if (std::holds_alternative<Laurent>(res)) {
            fit.class_polys[parity] = std::get<Laurent>(res);
        } else {
            fit.note += (fit.note.empty() ? "" : "; ");
            fit.note += "parity " + std::to_string(parity) + ": " +
                        std::get<InterpolationError>(res).reason;
            ok = false;
        }
    }
    fit.consistent = ok;
    return fit;
}

bool is_prime_power(long long n, long long* p_out, int* k_out) {
    if (n < 2) return false;
    for (long long p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        int k = 0;
        long long m = n;
        while (m % p == 0) {
            m /= p;
            ++k;
        }
        if (m != 1) return false;
        if (p_out) *p_out = p;
        if (k_out) *k_out = k;
        return true;
    }
    if (p_out) *p_out = n;
    if (k_out) *k_out = 1;
    return true;  // n prime
}

std::vector<long long> prime_powers(long long limit) {
    std::vector<long long> out;
    for (long long n = 2; n <= limit; ++n)
        if (is_prime_power(n)) out.push_back(n);
    return out;
}

}  // namespace qmr
