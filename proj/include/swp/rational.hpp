#pragma once

// ExactRational: arbitrary-precision rational numbers backed by GMP's mpq_t.
// Invariants: always canonical (numerator/denominator coprime, denominator > 0).
// All arithmetic is exact; there is no implicit floating-point path. The only
// lossy conversion is the explicit to_double(), used by numerical oracles.

#include <cstdint>
#include <iosfwd>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>

#include <gmp.h>

namespace swp {

class ExactRational {
public:
    ExactRational() { mpq_init(q_); }

    ExactRational(long n) {  // NOLINT(google-explicit-constructor) - numeric literal convenience
        mpq_init(q_);
        mpq_set_si(q_, n, 1);
    }

    ExactRational(int n) : ExactRational(static_cast<long>(n)) {}  // NOLINT

    ExactRational(long num, long den) {
        if (den == 0) throw std::domain_error("ExactRational: zero denominator");
        mpq_init(q_);
        // mpq_set_si takes the denominator as unsigned; carry a negative
        // denominator's sign through a final negation (safe for LONG_MIN).
        const bool negative = den < 0;
        const unsigned long magnitude =
            negative ? -static_cast<unsigned long>(den) : static_cast<unsigned long>(den);
        mpq_set_si(q_, num, magnitude);
        if (negative) mpq_neg(q_, q_);
        mpq_canonicalize(q_);
    }

    // Accepts "p", "-p", "p/q" (base 10). Throws std::invalid_argument on junk.
    static ExactRational from_string(const std::string& s) {
        ExactRational r;
        if (s.empty() || mpq_set_str(r.q_, s.c_str(), 10) != 0)
            throw std::invalid_argument("ExactRational: cannot parse '" + s + "'");
        if (mpz_sgn(mpq_denref(r.q_)) == 0)
            throw std::domain_error("ExactRational: zero denominator in '" + s + "'");
        mpq_canonicalize(r.q_);
        return r;
    }

    ExactRational(const ExactRational& o) {
        mpq_init(q_);
        mpq_set(q_, o.q_);
    }

    ExactRational(ExactRational&& o) noexcept {
        mpq_init(q_);
        mpq_swap(q_, o.q_);
    }

    ExactRational& operator=(const ExactRational& o) {
        if (this != &o) mpq_set(q_, o.q_);
        return *this;
    }

    ExactRational& operator=(ExactRational&& o) noexcept {
        if (this != &o) mpq_swap(q_, o.q_);
        return *this;
    }

    ~ExactRational() { mpq_clear(q_); }

    ExactRational& operator+=(const ExactRational& o) {
        mpq_add(q_, q_, o.q_);
        return *this;
    }
    ExactRational& operator-=(const ExactRational& o) {
        mpq_sub(q_, q_, o.q_);
        return *this;
    }
    ExactRational& operator*=(const ExactRational& o) {
        mpq_mul(q_, q_, o.q_);
        return *this;
    }
    ExactRational& operator/=(const ExactRational& o) {
        if (o.is_zero()) throw std::domain_error("ExactRational: division by zero");
        mpq_div(q_, q_, o.q_);
        return *this;
    }

    friend ExactRational operator+(ExactRational a, const ExactRational& b) { return a += b; }
    friend ExactRational operator-(ExactRational a, const ExactRational& b) { return a -= b; }
    friend ExactRational operator*(ExactRational a, const ExactRational& b) { return a *= b; }
    friend ExactRational operator/(ExactRational a, const ExactRational& b) { return a /= b; }

    ExactRational operator-() const {
        ExactRational r;
        mpq_neg(r.q_, q_);
        return r;
    }

    friend bool operator==(const ExactRational& a, const ExactRational& b) {
        return mpq_equal(a.q_, b.q_) != 0;
    }
    friend bool operator!=(const ExactRational& a, const ExactRational& b) { return !(a == b); }
    friend bool operator<(const ExactRational& a, const ExactRational& b) {
        return mpq_cmp(a.q_, b.q_) < 0;
    }
    friend bool operator<=(const ExactRational& a, const ExactRational& b) {
        return mpq_cmp(a.q_, b.q_) <= 0;
    }
    friend bool operator>(const ExactRational& a, const ExactRational& b) { return b < a; }
    friend bool operator>=(const ExactRational& a, const ExactRational& b) { return b <= a; }

    bool is_zero() const { return mpq_sgn(q_) == 0; }
    bool is_integer() const { return mpz_cmp_ui(mpq_denref(q_), 1) == 0; }
    int sign() const { return mpq_sgn(q_); }

    ExactRational abs() const {
        ExactRational r;
        mpq_abs(r.q_, q_);
        return r;
    }

    // Reciprocal; throws on zero.
    ExactRational inverse() const {
        if (is_zero()) throw std::domain_error("ExactRational: inverse of zero");
        ExactRational r;
        mpq_inv(r.q_, q_);
        return r;
    }

    ExactRational pow(unsigned e) const {
        ExactRational r(1), base(*this);
        while (e != 0) {
            if (e & 1u) r *= base;
            base *= base;
            e >>= 1;
        }
        return r;
    }

    double to_double() const { return mpq_get_d(q_); }

    // Canonical rendering: "p/q" in lowest terms with q > 0, or plain "p"
    // when the value is an integer.
    std::string to_string() const {
        char* s = mpq_get_str(nullptr, 10, q_);
        std::string out(s);
        void (*freefn)(void*, size_t);
        mp_get_memory_functions(nullptr, nullptr, &freefn);
        freefn(s, out.size() + 1);
        return out;
    }

    std::string numerator_string() const {
        char* s = mpz_get_str(nullptr, 10, mpq_numref(q_));
        std::string out(s);
        void (*freefn)(void*, size_t);
        mp_get_memory_functions(nullptr, nullptr, &freefn);
        freefn(s, out.size() + 1);
        return out;
    }

    std::string denominator_string() const {
        char* s = mpz_get_str(nullptr, 10, mpq_denref(q_));
        std::string out(s);
        void (*freefn)(void*, size_t);
        mp_get_memory_functions(nullptr, nullptr, &freefn);
        freefn(s, out.size() + 1);
        return out;
    }

    friend std::ostream& operator<<(std::ostream& os, const ExactRational& r) {
        return os << r.to_string();
    }

private:
    mpq_t q_;
};

// Short alias for arithmetic-heavy internals.
using Q = ExactRational;

// n! as an exact rational (integer-valued).
inline ExactRational factorial(int n) {
    if (n < 0) throw std::domain_error("factorial: negative argument");
    ExactRational r(1);
    for (int i = 2; i <= n; ++i) r *= ExactRational(i);
    return r;
}

// Binomial coefficient C(n, k); zero outside the triangle.
inline ExactRational binomial(int n, int k) {
    if (k < 0 || k > n) return ExactRational(0);
    ExactRational r(1);
    for (int i = 0; i < k; ++i) {
        r *= ExactRational(n - i);
        r /= ExactRational(i + 1);
    }
    return r;
}

}  // namespace swp
