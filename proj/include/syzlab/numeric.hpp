#pragma once

/*
 * Exact arithmetic foundation: GMP-backed rationals and integers, a cached
 * binomial table, parsing/printing of fractions, 62-bit prime sampling and
 * the word-sized prime field used by the modular rank paths.
 */

#include <boost/multiprecision/gmp.hpp>

#include <cstdint>
#include <mutex>
#include <random>
#include <string>
#include <vector>

#include "errors.hpp"

namespace syzlab {

using Integer  = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

inline Integer numerator(const Rational& r)   { return boost::multiprecision::numerator(r); }
inline Integer denominator(const Rational& r) { return boost::multiprecision::denominator(r); }

// Canonical text form: integers print bare, everything else as "num/den",
// exactly the two shapes parse_rational accepts.
inline std::string rational_to_string(const Rational& r) {
    if (denominator(r) == 1) return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

// Accepts "3", "-3", "3/4", "-3/4".  Throws parse_error on anything else.
inline Rational parse_rational(const std::string& text) {
    if (text.empty()) throw parse_error("empty rational literal");
    const auto slash = text.find('/');
    try {
        if (slash == std::string::npos) return Rational(Integer(text));
        const Integer num(text.substr(0, slash));
        const Integer den(text.substr(slash + 1));
        if (den == 0) throw parse_error("zero denominator in '" + text + "'");
        return Rational(num) / Rational(den);
    } catch (const std::exception& e) {
        throw parse_error("bad rational literal '" + text + "': " + e.what());
    }
}

// ---------------------------------------------------------------------------
// Binomial coefficients.  Computed once per row with exact integers and
// cached; the size_t accessor guards the (theoretical) overflow when a
// binomial is used as a dimension.
// ---------------------------------------------------------------------------

class binomial_table {
  public:
    static const Integer& get(unsigned n, unsigned k) {
        static binomial_table table;
        if (k > n) return table.zero_;
        std::lock_guard<std::mutex> lock(table.mutex_);
        table.grow(n);
        return table.rows_[n][k];
    }

  private:
    binomial_table() : zero_(0) { rows_.push_back({Integer(1)}); }

    void grow(unsigned n) {
        while (rows_.size() <= n) {
            const auto& prev = rows_.back();
            std::vector<Integer> row(rows_.size() + 1, Integer(1));
            for (std::size_t k = 1; k + 1 < row.size(); ++k)
                row[k] = prev[k - 1] + prev[k];
            rows_.push_back(std::move(row));
        }
    }

    std::mutex mutex_;
    std::vector<std::vector<Integer>> rows_;
    Integer zero_;
};

inline Integer binomial(unsigned n, unsigned k) { return binomial_table::get(n, k); }

inline std::size_t binomial_size_t(unsigned n, unsigned k) {
    const Integer& b = binomial_table::get(n, k);
    if (b > Integer(SIZE_MAX))
        throw size_budget_exceeded("binomial(" + std::to_string(n) + "," + std::to_string(k) +
                                   ") does not fit in an index type");
    return static_cast<std::size_t>(b);
}

inline Integer factorial(unsigned k) {
    Integer f(1);
    for (unsigned i = 2; i <= k; ++i) f *= i;
    return f;
}

// Generalized binomial coefficient C(a, k) for integer a (possibly negative):
// a (a-1) ... (a-k+1) / k!.  Used by Laurent-monomial jets.
inline Rational generalized_binomial(long long a, unsigned k) {
    Rational num(1);
    for (unsigned i = 0; i < k; ++i) num *= Rational(Integer(a) - Integer(i));
    return num / Rational(factorial(k));
}

// ---------------------------------------------------------------------------
// Word-sized prime fields.  Primes are drawn uniformly from [2^61, 2^62), so
// every modulus comfortably exceeds 2^31 and products fit in 128 bits.
// ---------------------------------------------------------------------------

struct fp_field {
    std::uint64_t p = 0;

    std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
        const std::uint64_t s = a + b;
        return s >= p ? s - p : s;
    }
    std::uint64_t sub(std::uint64_t a, std::uint64_t b) const {
        return a >= b ? a - b : a + p - b;
    }
    std::uint64_t neg(std::uint64_t a) const { return a == 0 ? 0 : p - a; }
    std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
        return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
    }
    std::uint64_t pow(std::uint64_t a, std::uint64_t e) const {
        std::uint64_t r = 1;
        while (e) {
            if (e & 1) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }
    std::uint64_t inv(std::uint64_t a) const { return pow(a, p - 2); }
};

inline bool is_probable_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n == q) return true;
        if (n % q == 0) return false;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    const fp_field f{n};
    // Deterministic witness set for 64-bit inputs.
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        std::uint64_t x = f.pow(a % n, d);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = f.mul(x, x);
            if (x == n - 1) { composite = false; break; }
        }
        if (composite) return false;
    }
    return true;
}

inline std::uint64_t random_prime_62(std::mt19937_64& rng) {
    std::uniform_int_distribution<std::uint64_t> dist(1ULL << 61, (1ULL << 62) - 1);
    for (;;) {
        std::uint64_t candidate = dist(rng) | 1ULL;
        if (is_probable_prime(candidate)) return candidate;
    }
}

// Image of an exact rational in F_p.  Throws prime_clash when the reduced
// denominator vanishes mod p.
inline std::uint64_t reduce_mod_p(const Rational& r, const fp_field& f) {
    const Integer p(f.p);
    Integer num = numerator(r) % p;
    if (num < 0) num += p;
    Integer den = denominator(r) % p;
    if (den == 0)
        throw prime_clash("denominator of " + rational_to_string(r) + " vanishes mod " +
                          std::to_string(f.p));
    const std::uint64_t n = static_cast<std::uint64_t>(num);
    const std::uint64_t d = static_cast<std::uint64_t>(den);
    return f.mul(n, f.inv(d));
}

// FNV-1a, used for cache keys and per-task seed derivation.
inline std::uint64_t fnv1a64(const std::string& data, std::uint64_t seed = 14695981039346656037ULL) {
    std::uint64_t h = seed;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

// Deterministic per-task seed derived from a base seed and a label, so that
// results do not depend on worker scheduling.
inline std::uint64_t derive_seed(std::uint64_t base, const std::string& label) {
    return fnv1a64(label, base ^ 0x9e3779b97f4a7c15ULL);
}

}  // namespace syzlab
