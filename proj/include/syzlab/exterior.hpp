#pragma once

/*
 * Combinatorics of wedge bases.  A basis element of the p-th exterior power
 * of an n-dimensional space with ordered basis e_0 < ... < e_{n-1} is a
 * strictly increasing index tuple; tuples are ordered lexicographically and
 * rank_of / unrank realize the order-preserving bijection with
 * [0, C(n,p)).
 */

#include <cstdint>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "numeric.hpp"

namespace syzlab {

using wedge_index = std::vector<std::uint32_t>;

inline bool is_strictly_increasing(const wedge_index& w) {
    for (std::size_t i = 1; i < w.size(); ++i)
        if (w[i - 1] >= w[i]) return false;
    return true;
}

// All strictly increasing p-tuples drawn from {0,...,n-1}, lexicographic.
inline std::vector<wedge_index> wedge_basis(unsigned n, unsigned p) {
    std::vector<wedge_index> basis;
    if (p > n) return basis;
    basis.reserve(binomial_size_t(n, p));
    wedge_index w(p);
    for (unsigned i = 0; i < p; ++i) w[i] = i;
    for (;;) {
        basis.push_back(w);
        if (p == 0) break;
        // advance to the lexicographic successor
        int i = static_cast<int>(p) - 1;
        while (i >= 0 && w[i] == n - p + i) --i;
        if (i < 0) break;
        ++w[i];
        for (unsigned j = i + 1; j < p; ++j) w[j] = w[j - 1] + 1;
    }
    return basis;
}

// Lexicographic rank of a strictly increasing tuple among all C(n,p) tuples.
inline std::size_t wedge_rank(const wedge_index& w, unsigned n) {
    const unsigned p = static_cast<unsigned>(w.size());
    if (!is_strictly_increasing(w)) throw index_error("wedge index not strictly increasing");
    if (p > 0 && w.back() >= n) throw index_error("wedge index out of range");
    Integer rank = 0;
    std::uint32_t next_free = 0;
    for (unsigned a = 0; a < p; ++a) {
        // tuples that agree up to position a-1 and take a smaller value here
        for (std::uint32_t x = next_free; x < w[a]; ++x)
            rank += binomial(n - 1 - x, p - 1 - a);
        next_free = w[a] + 1;
    }
    if (rank > Integer(SIZE_MAX)) throw size_budget_exceeded("wedge rank overflows index type");
    return static_cast<std::size_t>(rank);
}

// Inverse of wedge_rank.
inline wedge_index wedge_unrank(std::size_t rank, unsigned n, unsigned p) {
    wedge_index w(p);
    Integer rest(rank);
    std::uint32_t x = 0;
    for (unsigned a = 0; a < p; ++a) {
        for (;; ++x) {
            if (x >= n) throw index_error("wedge rank out of range");
            const Integer block = binomial(n - 1 - x, p - 1 - a);
            if (rest < block) break;
            rest -= block;
        }
        w[a] = x++;
    }
    return w;
}

// Removes the j-th entry (0-based) and reports the sign (-1)^j carried by
// the corresponding term of the Koszul differential.
inline std::pair<wedge_index, int> wedge_contract(const wedge_index& w, unsigned j) {
    if (j >= w.size()) throw index_error("contraction position out of range");
    wedge_index out;
    out.reserve(w.size() - 1);
    for (std::size_t i = 0; i < w.size(); ++i)
        if (i != j) out.push_back(w[i]);
    return {std::move(out), (j % 2 == 0) ? 1 : -1};
}

// Inserts value v into a strictly increasing tuple, reporting the sign
// (-1)^{position}; the inverse of wedge_contract.  Throws if v is present.
inline std::pair<wedge_index, int> wedge_insert(const wedge_index& w, std::uint32_t v) {
    wedge_index out;
    out.reserve(w.size() + 1);
    int pos = 0;
    bool placed = false;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (!placed && w[i] > v) {
            out.push_back(v);
            placed = true;
        } else if (w[i] == v) {
            throw index_error("wedge_insert: value already present");
        }
        if (!placed) ++pos;
        out.push_back(w[i]);
    }
    if (!placed) out.push_back(v);
    return {std::move(out), (pos % 2 == 0) ? 1 : -1};
}

}  // namespace syzlab
