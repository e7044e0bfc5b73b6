#pragma once

/*
 * Independent oracles for the test suite.
 *
 * Everything in this header is deliberately written WITHOUT the library's
 * exterior-algebra, matrix, rank, or Koszul machinery, so that agreement
 * between an oracle and the library is evidence and not a tautology:
 *
 *   - dense_bareiss_rank: classical two-step fraction-free Gaussian
 *     elimination on an integer matrix (denominators cleared first).
 *   - p1_koszul_oracle: assembles the weight-(p,q) Koszul differential for
 *     X = P^1, B = O(b), L = O(d) directly from monomial exponents, with its
 *     own combination enumeration, and takes dense ranks.
 *   - quadric_kernel_dim: dim ker(Sym^2 H^0(L) -> H^0(2L)) for a monomial
 *     basis given by exponent vectors; equals dim K_{1,1}(X, O; L) for the
 *     classical embeddings exercised in the tests.
 *   - splitting_h1 / splitting_h0: cohomology of (+)-decomposed twists of
 *     the kernel bundle on P^1 straight from h^i(P^1, O(m)).
 */

#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

#include "syzlab/numeric.hpp"

namespace oracle {

using syzlab::Integer;
using syzlab::Rational;

// Fraction-free Bareiss elimination; returns the rank. Dense and slow on
// purpose -- this is a reference implementation, not an engine.
inline std::size_t dense_bareiss_rank(std::vector<std::vector<Rational>> m) {
    if (m.empty()) return 0;
    const std::size_t rows = m.size(), cols = m[0].size();
    if (cols == 0) return 0;
    if (rows * cols > 1u << 22) throw std::runtime_error("oracle matrix too large");

    // clear denominators row by row
    std::vector<std::vector<Integer>> a(rows, std::vector<Integer>(cols));
    for (std::size_t i = 0; i < rows; ++i) {
        if (m[i].size() != cols) throw std::runtime_error("oracle matrix is ragged");
        Integer l = 1;
        for (const auto& x : m[i]) l = lcm(l, Integer(denominator(x)));
        for (std::size_t j = 0; j < cols; ++j) {
            const Rational scaled = m[i][j] * Rational(l);
            a[i][j] = numerator(scaled);
        }
    }

    Integer prev = 1;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols && rank < rows; ++col) {
        std::size_t pivot = rank;
        while (pivot < rows && a[pivot][col] == 0) ++pivot;
        if (pivot == rows) continue;
        std::swap(a[pivot], a[rank]);
        for (std::size_t i = rank + 1; i < rows; ++i) {
            for (std::size_t j = col + 1; j < cols; ++j) {
                Integer t = a[rank][col] * a[i][j] - a[i][col] * a[rank][j];
                a[i][j] = t / prev;  // exact by the Bareiss identity
            }
            a[i][col] = 0;
        }
        prev = a[rank][col];
        ++rank;
    }
    return rank;
}

// --- a from-scratch Koszul slice for P^1 --------------------------------

namespace detail {

// all strictly increasing index tuples of length p from {0..n-1}, lex order
inline std::vector<std::vector<unsigned>> combinations(unsigned n, unsigned p) {
    std::vector<std::vector<unsigned>> out;
    if (p > n) return out;
    std::vector<unsigned> c(p);
    for (unsigned i = 0; i < p; ++i) c[i] = i;
    while (true) {
        out.push_back(c);
        if (p == 0) break;
        long i = static_cast<long>(p) - 1;
        while (i >= 0 && c[static_cast<std::size_t>(i)] == n - p + static_cast<unsigned>(i)) --i;
        if (i < 0) break;
        ++c[static_cast<std::size_t>(i)];
        for (std::size_t j = static_cast<std::size_t>(i) + 1; j < p; ++j) c[j] = c[j - 1] + 1;
    }
    return out;
}

inline std::size_t w_dim(long b, long d, long m) {
    if (m < 0) return 0;
    const long deg = b + m * d;
    return deg < 0 ? 0u : static_cast<std::size_t>(deg + 1);
}

// rank of the map Lambda^p V (x) W_q -> Lambda^{p-1} V (x) W_{q+1} on P^1,
// assembled dense from scratch (V = <t^0..t^d>, W_m = <t^0..t^{b+md}>)
inline std::size_t p1_map_rank(long b, long d, long p, long q) {
    if (p <= 0 || q < 0) return 0;
    const unsigned n = static_cast<unsigned>(d + 1);
    if (p > d + 1) return 0;
    const std::size_t wq = w_dim(b, d, q), wq1 = w_dim(b, d, q + 1);
    if (wq == 0 || wq1 == 0) return 0;

    const auto dom = combinations(n, static_cast<unsigned>(p));
    const auto cod = combinations(n, static_cast<unsigned>(p - 1));
    std::map<std::vector<unsigned>, std::size_t> cod_pos;
    for (std::size_t i = 0; i < cod.size(); ++i) cod_pos[cod[i]] = i;

    std::vector<std::vector<Rational>> mat(cod.size() * wq1,
                                           std::vector<Rational>(dom.size() * wq, Rational(0)));
    for (std::size_t wi = 0; wi < dom.size(); ++wi)
        for (std::size_t s = 0; s < wq; ++s) {
            const std::size_t colidx = wi * wq + s;
            for (std::size_t j = 0; j < dom[wi].size(); ++j) {
                std::vector<unsigned> rest = dom[wi];
                const unsigned v = rest[j];
                rest.erase(rest.begin() + static_cast<long>(j));
                const std::size_t out_s = v + s;  // t^v * t^s
                const std::size_t rowidx = cod_pos.at(rest) * wq1 + out_s;
                mat[rowidx][colidx] += (j % 2 == 0) ? Rational(1) : Rational(-1);
            }
        }
    return dense_bareiss_rank(std::move(mat));
}

}  // namespace detail

// dim K_{p,q}(P^1, O(b); O(d)) from scratch
inline long p1_koszul_oracle(long b, long d, long p, long q) {
    if (p < 0 || q < 0 || p > d + 1) return 0;
    const std::size_t wq = detail::w_dim(b, d, q);
    Integer middle = 1;
    {  // binomial(d+1, p) without the library helper
        for (long i = 0; i < p; ++i) middle = middle * Integer(d + 1 - i) / Integer(i + 1);
        middle *= static_cast<unsigned long>(wq);
    }
    const Integer dim = middle - Integer(static_cast<unsigned long>(detail::p1_map_rank(b, d, p, q))) -
                        Integer(static_cast<unsigned long>(detail::p1_map_rank(b, d, p + 1, q - 1)));
    if (dim < 0) throw std::runtime_error("oracle produced a negative dimension");
    return static_cast<long>(dim);
}

// dim ker(Sym^2 H^0(L) -> H^0(2L)) for a monomial basis listed by exponent
// vectors; the multiplication adds exponents.
inline long quadric_kernel_dim(const std::vector<std::vector<long>>& exps) {
    const std::size_t n = exps.size();
    std::vector<std::pair<std::size_t, std::size_t>> pairs;  // i <= j: basis of Sym^2
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) pairs.emplace_back(i, j);

    std::map<std::vector<long>, std::size_t> rows;
    for (const auto& [i, j] : pairs) {
        std::vector<long> sum = exps[i];
        for (std::size_t k = 0; k < sum.size(); ++k) sum[k] += exps[j][k];
        rows.emplace(std::move(sum), rows.size());
    }
    std::vector<std::vector<Rational>> mat(rows.size(),
                                           std::vector<Rational>(pairs.size(), Rational(0)));
    for (std::size_t c = 0; c < pairs.size(); ++c) {
        std::vector<long> sum = exps[pairs[c].first];
        for (std::size_t k = 0; k < sum.size(); ++k) sum[k] += exps[pairs[c].second][k];
        mat[rows.at(sum)][c] += 1;
    }
    return static_cast<long>(pairs.size() - dense_bareiss_rank(std::move(mat)));
}

// exponent bases for the two embeddings the tests use
inline std::vector<std::vector<long>> p1_monomials(long d) {
    std::vector<std::vector<long>> out;
    for (long k = 0; k <= d; ++k) out.push_back({k});
    return out;
}

inline std::vector<std::vector<long>> p2_monomials(long d) {
    std::vector<std::vector<long>> out;
    for (long i = 0; i <= d; ++i)
        for (long j = 0; i + j <= d; ++j) out.push_back({i, j});
    return out;
}

// cohomology of M_L^{(x)(p+1)} (x) O(b) on P^1 via the splitting
// M_{O(d)} = O(-1)^{(+) d}: the tensor power is d^{p+1} copies of O(b-p-1),
// and h^0(O(m)) = max(0, m+1), h^1(O(m)) = max(0, -m-1).
inline Integer splitting_h0(long b, long d, long p) {
    Integer copies = 1;
    for (long i = 0; i <= p; ++i) copies *= d;
    const long m = b - p - 1;
    return copies * Integer(m >= 0 ? m + 1 : 0);
}

inline Integer splitting_h1(long b, long d, long p) {
    Integer copies = 1;
    for (long i = 0; i <= p; ++i) copies *= d;
    const long m = b - p - 1;
    return copies * Integer(-m - 1 >= 0 ? -m - 1 : 0);
}

}  // namespace oracle
