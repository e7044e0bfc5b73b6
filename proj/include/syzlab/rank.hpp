#pragma once

/*
 * Exact rank computation for sparse matrices.
 *
 * Three field backends share one elimination engine:
 *   - rationals: GMP-canonicalized updates touching only affected rows,
 *     Markowitz pivoting with a simplicity tie-break to control entry growth;
 *   - a single word-sized prime field (all moduli are random 62-bit primes,
 *     so products fit in 128 bits; the hot loops run Montgomery arithmetic);
 *   - multi-prime consensus (default): ranks over several independent primes
 *     must agree, otherwise the computation escalates to the rationals.
 *
 * Prime-field matrices above a configurable size are routed to a black-box
 * Krylov method (diagonal preconditioning, Berlekamp-Massey recovery of the
 * minimal polynomial) whose cost is O(n * nnz) instead of elimination fill.
 * Rational ranks never take the black-box path, so a certified rank is
 * always the product of exact arithmetic.
 */

#include <algorithm>
#include <cstdint>
#include <optional>
#include <queue>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "matrix.hpp"
#include "numeric.hpp"

namespace syzlab {

// ---------------------------------------------------------------------------
// Field selection
// ---------------------------------------------------------------------------

struct field_spec {
    enum class kind { rational, prime, multi_prime };

    kind k = kind::multi_prime;
    std::uint64_t prime = 0;  // 0 = draw from the seed at the call site
    unsigned count = 3;

    static field_spec rational() { return {kind::rational, 0, 0}; }
    static field_spec prime_field(std::uint64_t p = 0) { return {kind::prime, p, 0}; }
    static field_spec multi(unsigned n) { return {kind::multi_prime, 0, n == 0 ? 1 : n}; }

    // "auto" | "rational" | "prime" | "prime:<p>" | "multi:<n>"
    static field_spec parse(const std::string& text) {
        if (text == "auto" || text == "multi") return multi(3);
        if (text == "rational") return rational();
        if (text == "prime") return prime_field();
        if (text.rfind("prime:", 0) == 0) {
            const std::uint64_t p = std::stoull(text.substr(6));
            if (!is_probable_prime(p) || p <= (1ULL << 31))
                throw parse_error("field 'prime:" + text.substr(6) + "': need a prime above 2^31");
            return prime_field(p);
        }
        if (text.rfind("multi:", 0) == 0) {
            const unsigned long n = std::stoul(text.substr(6));
            if (n == 0 || n > 16) throw parse_error("field 'multi:N' needs 1 <= N <= 16");
            return multi(static_cast<unsigned>(n));
        }
        throw parse_error("unknown field spec '" + text + "'");
    }

    std::string to_string() const {
        switch (k) {
            case kind::rational: return "rational";
            case kind::prime: return prime ? "prime:" + std::to_string(prime) : "prime";
            default: return "multi:" + std::to_string(count);
        }
    }
};

struct rank_result {
    std::size_t rank = 0;
    bool certified = false;   // true for rational computations and multi-prime consensus
    std::string field;        // human-readable description of what was actually used
};

struct rank_options {
    std::uint64_t seed = 0;          // drives prime draws and black-box randomness
    std::size_t blackbox_min_dim = 2000;
    std::size_t blackbox_min_nnz = 12000;
    bool force_blackbox = false;     // testing hooks
    bool forbid_blackbox = false;
};

// ---------------------------------------------------------------------------
// Montgomery arithmetic for 62-bit prime moduli
// ---------------------------------------------------------------------------

struct fp_mont {
    std::uint64_t p = 0, ninv = 0, r1 = 0, r2 = 0;

    static fp_mont make(std::uint64_t p) {
        fp_mont f;
        f.p = p;
        std::uint64_t y = 1;
        for (int i = 0; i < 6; ++i) y *= 2 - p * y;  // Newton: y = p^{-1} mod 2^64
        f.ninv = 0 - y;
        f.r1 = static_cast<std::uint64_t>((static_cast<unsigned __int128>(1) << 64) % p);
        f.r2 = static_cast<std::uint64_t>(static_cast<unsigned __int128>(f.r1) * f.r1 % p);
        return f;
    }

    std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
        const std::uint64_t s = a + b;
        return s >= p ? s - p : s;
    }
    std::uint64_t sub(std::uint64_t a, std::uint64_t b) const {
        return a >= b ? a - b : a + p - b;
    }
    std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
        const unsigned __int128 t = static_cast<unsigned __int128>(a) * b;
        const std::uint64_t m = static_cast<std::uint64_t>(t) * ninv;
        const unsigned __int128 s = t + static_cast<unsigned __int128>(m) * p;
        const std::uint64_t r = static_cast<std::uint64_t>(s >> 64);
        return r >= p ? r - p : r;
    }
    std::uint64_t one() const { return r1; }
    std::uint64_t to(std::uint64_t plain) const { return mul(plain, r2); }
    std::uint64_t from(std::uint64_t mont) const { return mul(mont, 1); }
    std::uint64_t pow(std::uint64_t a, std::uint64_t e) const {
        std::uint64_t acc = one();
        while (e) {
            if (e & 1) acc = mul(acc, a);
            a = mul(a, a);
            e >>= 1;
        }
        return acc;
    }
    std::uint64_t inv(std::uint64_t a) const { return pow(a, p - 2); }
};

namespace detail {

// ---------------------------------------------------------------------------
// Field policies for the shared elimination engine
// ---------------------------------------------------------------------------

struct rational_ops {
    using elem = Rational;
    static constexpr bool dense_capable = false;

    static bool is_zero(const elem& a) { return a == 0; }
    static elem divide(const elem& a, const elem& b) { return a / b; }
    // a - f*b
    static elem sub_mul(const elem& a, const elem& f, const elem& b) { return a - f * b; }
    // pivot simplicity: total bit size, so unit entries win ties
    static std::size_t weight(const elem& a) {
        const Integer n = boost::multiprecision::abs(numerator(a));
        const Integer d = denominator(a);
        return (n == 1 ? 0 : boost::multiprecision::msb(n)) +
               (d == 1 ? 0 : boost::multiprecision::msb(d));
    }
    static std::size_t dense_rank(std::vector<std::vector<elem>>&) { return 0; }  // unused
};

struct fp_ops {
    fp_mont f;
    using elem = std::uint64_t;
    static constexpr bool dense_capable = true;

    static bool is_zero(elem a) { return a == 0; }
    elem divide(elem a, elem b) const { return f.mul(a, f.inv(b)); }
    elem sub_mul(elem a, elem fac, elem b) const { return f.sub(a, f.mul(fac, b)); }
    static std::size_t weight(elem) { return 0; }

    std::size_t dense_rank(std::vector<std::vector<elem>>& m) const {
        if (m.empty()) return 0;
        const std::size_t R = m.size(), C = m[0].size();
        std::size_t r = 0;
        for (std::size_t c = 0; c < C && r < R; ++c) {
            std::size_t pivot = r;
            while (pivot < R && m[pivot][c] == 0) ++pivot;
            if (pivot == R) continue;
            std::swap(m[pivot], m[r]);
            const elem pinv = f.inv(m[r][c]);
            for (std::size_t k = r + 1; k < R; ++k) {
                if (m[k][c] == 0) continue;
                const elem fac = f.mul(m[k][c], pinv);
                const auto& src = m[r];
                auto& dst = m[k];
                for (std::size_t l = c; l < C; ++l)
                    dst[l] = f.sub(dst[l], f.mul(fac, src[l]));
            }
            ++r;
        }
        return r;
    }
};

struct elim_tuning {
    std::size_t dense_dim = 160;        // switch when the short side is this small
    double dense_density = 0.14;        // ... or the active block got this dense
    double dense_cost_cap = 6.0e9;      // but never schedule a bigger dense job than this
};

// Right-looking sparse Gaussian elimination with Markowitz pivoting.
// Column membership lists are maintained lazily (stale ids are filtered on
// use), count heaps are lazy too.  Correctness does not depend on any of the
// heuristics; they only steer fill-in.
template <class Ops>
class sparse_eliminator {
  public:
    using elem = typename Ops::elem;
    using row_t = std::vector<std::pair<std::uint32_t, elem>>;

    sparse_eliminator(const Ops& ops, std::vector<row_t> rows, std::size_t ncols, elim_tuning tune = {})
        : ops_(ops), rows_(std::move(rows)), ncols_(ncols), tune_(tune) {
        alive_.assign(rows_.size(), 1);
        col_count_.assign(ncols_, 0);
        col_rows_.assign(ncols_, {});
        for (std::uint32_t i = 0; i < rows_.size(); ++i)
            for (const auto& [c, v] : rows_[i]) {
                ++col_count_[c];
                col_rows_[c].push_back(i);
                ++active_nnz_;
            }
        alive_rows_ = 0;
        for (std::uint32_t i = 0; i < rows_.size(); ++i) {
            if (rows_[i].empty()) {
                alive_[i] = 0;
            } else {
                ++alive_rows_;
                row_heap_.push({rows_[i].size(), i});
            }
        }
        active_cols_ = 0;
        for (std::uint32_t c = 0; c < ncols_; ++c)
            if (col_count_[c]) {
                ++active_cols_;
                col_heap_.push({col_count_[c], c});
            }
    }

    std::size_t run() {
        std::size_t rank = 0;
        while (active_nnz_ > 0) {
            if constexpr (Ops::dense_capable) {
                if (auto dense = maybe_densify()) return rank + *dense;
            }
            auto [i, j] = pick_pivot();
            do_pivot(i, j);
            ++rank;
        }
        return rank;
    }

  private:
    // Keep only ids that are alive and still carry an entry in column j.
    std::vector<std::uint32_t>& validate_col(std::uint32_t j) {
        auto& list = col_rows_[j];
        std::size_t out = 0;
        for (std::uint32_t i : list)
            if (alive_[i] && row_has(i, j)) list[out++] = i;
        list.resize(out);
        // stale duplicates are possible; they were appended on refill
        std::sort(list.begin(), list.end());
        list.erase(std::unique(list.begin(), list.end()), list.end());
        return list;
    }

    bool row_has(std::uint32_t i, std::uint32_t j) const {
        const auto& r = rows_[i];
        auto it = std::lower_bound(r.begin(), r.end(), j, [](const auto& e, std::uint32_t col) {
            return e.first < col;
        });
        return it != r.end() && it->first == j;
    }

    const elem& at(std::uint32_t i, std::uint32_t j) const {
        const auto& r = rows_[i];
        auto it = std::lower_bound(r.begin(), r.end(), j, [](const auto& e, std::uint32_t col) {
            return e.first < col;
        });
        return it->second;
    }

    struct candidate {
        unsigned long long score = ~0ULL;
        std::size_t weight = ~std::size_t(0);
        std::uint32_t i = 0, j = 0;
        bool valid = false;

        void offer(unsigned long long s, std::size_t w, std::uint32_t row, std::uint32_t col) {
            if (!valid || s < score || (s == score && w < weight)) {
                score = s;
                weight = w;
                i = row;
                j = col;
                valid = true;
            }
        }
    };

    std::pair<std::uint32_t, std::uint32_t> pick_pivot() {
        candidate best;

        // shortest-column candidate
        while (!col_heap_.empty()) {
            auto [cnt, j] = col_heap_.top();
            if (col_count_[j] == 0 || cnt != col_count_[j]) {
                col_heap_.pop();
                continue;
            }
            for (std::uint32_t i : validate_col(j)) {
                const unsigned long long s =
                    static_cast<unsigned long long>(rows_[i].size() - 1) * (col_count_[j] - 1);
                best.offer(s, Ops::weight(at(i, j)), i, j);
            }
            break;
        }

        // shortest-row candidate
        while (!row_heap_.empty()) {
            auto [len, i] = row_heap_.top();
            if (!alive_[i] || rows_[i].size() != len) {
                row_heap_.pop();
                continue;
            }
            for (const auto& [c, v] : rows_[i]) {
                const unsigned long long s =
                    static_cast<unsigned long long>(rows_[i].size() - 1) * (col_count_[c] - 1);
                best.offer(s, Ops::weight(v), i, c);
            }
            break;
        }

        if (!best.valid) throw error("internal: no pivot despite active entries");
        return {best.i, best.j};
    }

    void bump_col(std::uint32_t c) {
        if (col_count_[c]) col_heap_.push({col_count_[c], c});
    }

    void do_pivot(std::uint32_t pi, std::uint32_t pj) {
        const elem piv = at(pi, pj);
        auto targets = validate_col(pj);  // copy: list will be rewritten below
        for (std::uint32_t k : targets) {
            if (k == pi) continue;
            eliminate_row(k, pi, pj, piv);
        }
        retire_row(pi);
    }

    void eliminate_row(std::uint32_t k, std::uint32_t pi, std::uint32_t pj, const elem& piv) {
        const elem fac = ops_.divide(at(k, pj), piv);
        const row_t& src = rows_[pi];
        row_t& dst = rows_[k];
        row_t merged;
        merged.reserve(dst.size() + src.size());
        std::size_t a = 0, b = 0;
        while (a < dst.size() || b < src.size()) {
            if (b == src.size() || (a < dst.size() && dst[a].first < src[b].first)) {
                merged.push_back(std::move(dst[a++]));
            } else if (a == dst.size() || src[b].first < dst[a].first) {
                // fill-in
                elem v = ops_.sub_mul(elem(0), fac, src[b].second);
                if (!Ops::is_zero(v)) {
                    ++col_count_[src[b].first];
                    ++active_nnz_;
                    col_rows_[src[b].first].push_back(k);
                    bump_col(src[b].first);
                    merged.emplace_back(src[b].first, std::move(v));
                }
                ++b;
            } else {
                elem v = ops_.sub_mul(dst[a].second, fac, src[b].second);
                if (Ops::is_zero(v)) {
                    --col_count_[dst[a].first];
                    --active_nnz_;
                    if (col_count_[dst[a].first] == 0) --active_cols_;
                    bump_col(dst[a].first);
                } else {
                    merged.emplace_back(dst[a].first, std::move(v));
                }
                ++a;
                ++b;
            }
        }
        dst = std::move(merged);
        if (dst.empty()) {
            alive_[k] = 0;
            --alive_rows_;
        } else {
            row_heap_.push({dst.size(), k});
        }
    }

    void retire_row(std::uint32_t i) {
        for (const auto& [c, v] : rows_[i]) {
            --col_count_[c];
            --active_nnz_;
            if (col_count_[c] == 0) --active_cols_;
            bump_col(c);
        }
        rows_[i].clear();
        rows_[i].shrink_to_fit();
        alive_[i] = 0;
        --alive_rows_;
    }

    std::optional<std::size_t> maybe_densify() {
        const std::size_t short_side = std::min<std::size_t>(alive_rows_, active_cols_);
        if (short_side == 0) return std::nullopt;
        const double cost = static_cast<double>(alive_rows_) * active_cols_ * short_side;
        const double density =
            static_cast<double>(active_nnz_) / (static_cast<double>(alive_rows_) * active_cols_);
        const bool trigger = short_side <= tune_.dense_dim || density >= tune_.dense_density;
        if (!trigger || cost > tune_.dense_cost_cap) return std::nullopt;

        std::vector<std::uint32_t> col_map(ncols_, UINT32_MAX);
        std::uint32_t next = 0;
        for (std::uint32_t c = 0; c < ncols_; ++c)
            if (col_count_[c]) col_map[c] = next++;
        std::vector<std::vector<elem>> dense;
        dense.reserve(alive_rows_);
        for (std::uint32_t i = 0; i < rows_.size(); ++i) {
            if (!alive_[i]) continue;
            std::vector<elem> row(next, elem(0));
            for (const auto& [c, v] : rows_[i]) row[col_map[c]] = v;
            dense.push_back(std::move(row));
        }
        return ops_.dense_rank(dense);
    }

    Ops ops_;
    std::vector<row_t> rows_;
    std::size_t ncols_;
    elim_tuning tune_;

    std::vector<char> alive_;
    std::vector<std::uint32_t> col_count_;
    std::vector<std::vector<std::uint32_t>> col_rows_;
    std::size_t active_nnz_ = 0, alive_rows_ = 0, active_cols_ = 0;

    using heap_item = std::pair<std::size_t, std::uint32_t>;
    std::priority_queue<heap_item, std::vector<heap_item>, std::greater<>> col_heap_, row_heap_;
};

// ---------------------------------------------------------------------------
// Black-box rank over a prime field (Krylov sequence + Berlekamp-Massey).
// Monte Carlo with failure probability O(dim^2 / p); the multi-prime driver
// cross-checks results across independent primes.
// ---------------------------------------------------------------------------

struct csr_matrix {
    std::uint32_t rows = 0, cols = 0;
    std::vector<std::size_t> ptr;   // rows+1
    std::vector<std::uint32_t> idx;
    std::vector<std::uint64_t> val; // Montgomery domain
};

inline csr_matrix build_csr(std::uint32_t rows, std::uint32_t cols,
                            const std::vector<std::tuple<std::uint32_t, std::uint32_t, std::uint64_t>>& entries) {
    csr_matrix m;
    m.rows = rows;
    m.cols = cols;
    m.ptr.assign(rows + 1, 0);
    for (const auto& [r, c, v] : entries) ++m.ptr[r + 1];
    for (std::size_t i = 1; i <= rows; ++i) m.ptr[i] += m.ptr[i - 1];
    m.idx.resize(entries.size());
    m.val.resize(entries.size());
    std::vector<std::size_t> fill(m.ptr.begin(), m.ptr.end() - 1);
    for (const auto& [r, c, v] : entries) {
        m.idx[fill[r]] = c;
        m.val[fill[r]] = v;
        ++fill[r];
    }
    return m;
}

inline void csr_apply(const csr_matrix& m, const fp_mont& f, const std::uint64_t* x, std::uint64_t* y) {
    for (std::uint32_t r = 0; r < m.rows; ++r) {
        std::uint64_t acc = 0;
        for (std::size_t k = m.ptr[r]; k < m.ptr[r + 1]; ++k)
            acc = f.add(acc, f.mul(m.val[k], x[m.idx[k]]));
        y[r] = acc;
    }
}

// Minimal LFSR length L and connection coefficients c[1..L] with
// s[n] = -(c1 s[n-1] + ... + cL s[n-L]); plain-domain arithmetic.
inline std::pair<std::size_t, std::vector<std::uint64_t>> berlekamp_massey(
    const std::vector<std::uint64_t>& s, const fp_mont& f) {
    const std::size_t N = s.size();
    std::vector<std::uint64_t> C{f.one()}, B{f.one()};
    std::size_t L = 0, m = 1;
    std::uint64_t b = f.one();
    for (std::size_t n = 0; n < N; ++n) {
        std::uint64_t d = s[n];
        for (std::size_t i = 1; i <= L && i < C.size(); ++i)
            d = f.add(d, f.mul(C[i], s[n - i]));
        if (d == 0) {
            ++m;
        } else if (2 * L <= n) {
            std::vector<std::uint64_t> T = C;
            const std::uint64_t coef = f.mul(d, f.inv(b));
            if (C.size() < B.size() + m) C.resize(B.size() + m, 0);
            for (std::size_t i = 0; i < B.size(); ++i)
                C[i + m] = f.sub(C[i + m], f.mul(coef, B[i]));
            L = n + 1 - L;
            B = std::move(T);
            b = d;
            m = 1;
        } else {
            const std::uint64_t coef = f.mul(d, f.inv(b));
            if (C.size() < B.size() + m) C.resize(B.size() + m, 0);
            for (std::size_t i = 0; i < B.size(); ++i)
                C[i + m] = f.sub(C[i + m], f.mul(coef, B[i]));
            ++m;
        }
    }
    std::vector<std::uint64_t> coeffs(L + 1, 0);
    for (std::size_t i = 1; i <= L; ++i) coeffs[i] = i < C.size() ? C[i] : 0;
    return {L, std::move(coeffs)};
}

inline std::size_t blackbox_rank_mod_p(
    const std::vector<std::tuple<std::uint32_t, std::uint32_t, std::uint64_t>>& entries,
    std::uint32_t rows, std::uint32_t cols, const fp_mont& f, std::mt19937_64& rng) {
    if (entries.empty()) return 0;
    // orient so the Krylov side is the short one
    const bool flip = cols > rows;
    std::vector<std::tuple<std::uint32_t, std::uint32_t, std::uint64_t>> ents = entries;
    if (flip) {
        for (auto& [r, c, v] : ents) std::swap(r, c);
        std::swap(rows, cols);
    }
    const csr_matrix A = build_csr(rows, cols, ents);
    for (auto& [r, c, v] : ents) std::swap(r, c);
    const csr_matrix At = build_csr(cols, rows, ents);

    std::uniform_int_distribution<std::uint64_t> nonzero(1, f.p - 1);
    std::uniform_int_distribution<std::uint64_t> any(0, f.p - 1);
    const std::size_t n = cols;

    for (int attempt = 0; attempt < 3; ++attempt) {
        std::vector<std::uint64_t> dr(rows), dc(n), u(n), v(n);
        for (auto& x : dr) x = f.to(nonzero(rng));
        for (auto& x : dc) x = f.to(nonzero(rng));
        for (auto& x : u) x = f.to(any(rng));
        for (auto& x : v) x = f.to(any(rng));

        std::vector<std::uint64_t> x = v, t1(n), t2(rows), t3(n), seq(2 * n + 2);
        for (std::size_t k = 0; k < seq.size(); ++k) {
            std::uint64_t dot = 0;
            for (std::size_t i = 0; i < n; ++i) dot = f.add(dot, f.mul(u[i], x[i]));
            seq[k] = dot;
            if (k + 1 == seq.size()) break;
            // x <- Dc At Dr^2 A Dc x   (the square of Dr is as generic as Dr)
            for (std::size_t i = 0; i < n; ++i) t1[i] = f.mul(dc[i], x[i]);
            csr_apply(A, f, t1.data(), t2.data());
            for (std::size_t i = 0; i < rows; ++i) t2[i] = f.mul(dr[i], t2[i]);
            csr_apply(At, f, t2.data(), t3.data());
            for (std::size_t i = 0; i < n; ++i) x[i] = f.mul(dc[i], t3[i]);
        }

        auto [L, coeffs] = berlekamp_massey(seq, f);
        const std::size_t r = (L == 0) ? 0 : (coeffs[L] == 0 ? L - 1 : L);
        if (r <= std::min<std::size_t>(rows, n)) return r;
        // degenerate randomness; try again with fresh vectors
    }
    throw error("black-box rank failed to converge (improbable); retry with another field");
}

// ---------------------------------------------------------------------------
// Entry points per field
// ---------------------------------------------------------------------------

inline std::size_t rank_rational(const exact_matrix& m) {
    if (m.nnz() == 0) return 0;
    std::vector<std::vector<std::pair<std::uint32_t, Rational>>> rows(m.rows());
    for (const auto& e : m.entries()) rows[e.row].emplace_back(e.col, e.value);
    sparse_eliminator<rational_ops> elim(rational_ops{}, std::move(rows), m.cols());
    return elim.run();
}

inline std::size_t rank_mod_p(const exact_matrix& m, std::uint64_t p, const rank_options& opt,
                              std::mt19937_64& rng) {
    if (m.nnz() == 0) return 0;
    const fp_mont f = fp_mont::make(p);
    const fp_field plain{p};
    std::vector<std::tuple<std::uint32_t, std::uint32_t, std::uint64_t>> entries;
    entries.reserve(m.nnz());
    for (const auto& e : m.entries()) {
        const std::uint64_t residue = reduce_mod_p(e.value, plain);  // may throw prime_clash
        if (residue) entries.emplace_back(e.row, e.col, f.to(residue));
    }
    if (entries.empty()) return 0;

    const std::size_t short_side = std::min(m.rows(), m.cols());
    const bool use_blackbox =
        !opt.forbid_blackbox &&
        (opt.force_blackbox ||
         (short_side >= opt.blackbox_min_dim && entries.size() >= opt.blackbox_min_nnz));
    if (use_blackbox)
        return blackbox_rank_mod_p(entries, static_cast<std::uint32_t>(m.rows()),
                                   static_cast<std::uint32_t>(m.cols()), f, rng);

    std::vector<std::vector<std::pair<std::uint32_t, std::uint64_t>>> rows(m.rows());
    for (const auto& [r, c, v] : entries) rows[r].emplace_back(c, v);
    sparse_eliminator<fp_ops> elim(fp_ops{f}, std::move(rows), m.cols());
    return elim.run();
}

}  // namespace detail

// Rank of an exact sparse matrix over the requested field.
//
// multi_prime: draws `count` distinct random 62-bit primes from opt.seed,
// requires full agreement of the modular ranks and escalates to a rational
// computation on disagreement.  prime with prime==0 draws one prime the same
// way (and redraws on a denominator clash); a pinned prime propagates
// prime_clash to the caller.
inline rank_result rank_of(const exact_matrix& m, const field_spec& f, const rank_options& opt = {}) {
    switch (f.k) {
        case field_spec::kind::rational:
            return {detail::rank_rational(m), true, "rational"};

        case field_spec::kind::prime: {
            std::mt19937_64 rng(opt.seed ^ 0x517cc1b727220a95ULL);
            if (f.prime) {
                const std::size_t r = detail::rank_mod_p(m, f.prime, opt, rng);
                return {r, false, "prime:" + std::to_string(f.prime)};
            }
            for (int draws = 0; draws < 64; ++draws) {
                const std::uint64_t p = random_prime_62(rng);
                try {
                    const std::size_t r = detail::rank_mod_p(m, p, opt, rng);
                    return {r, false, "prime:" + std::to_string(p)};
                } catch (const prime_clash&) {
                    continue;
                }
            }
            throw prime_clash("could not find a clash-free prime in 64 draws");
        }

        case field_spec::kind::multi_prime:
        default: {
            std::mt19937_64 rng(opt.seed ^ 0x2545f4914f6cdd1dULL);
            std::set<std::uint64_t> used;
            std::vector<std::uint64_t> primes;
            std::vector<std::size_t> ranks;
            int draws = 0;
            while (primes.size() < f.count) {
                if (++draws > 64) throw prime_clash("could not find clash-free primes in 64 draws");
                const std::uint64_t p = random_prime_62(rng);
                if (!used.insert(p).second) continue;
                try {
                    ranks.push_back(detail::rank_mod_p(m, p, opt, rng));
                    primes.push_back(p);
                } catch (const prime_clash&) {
                    continue;
                }
            }
            const bool agree = std::all_of(ranks.begin(), ranks.end(),
                                           [&](std::size_t r) { return r == ranks.front(); });
            std::string desc = "multi:" + std::to_string(f.count) + "(";
            for (std::size_t i = 0; i < primes.size(); ++i)
                desc += (i ? "," : "") + std::to_string(primes[i]);
            desc += ")";
            if (agree) return {ranks.front(), true, desc};
            // disagreement: a prime was unlucky; the rationals settle it
            return {detail::rank_rational(m), true, desc + "+rational-escalation"};
        }
    }
}

inline std::size_t kernel_dim(const exact_matrix& m, const field_spec& f, const rank_options& opt = {}) {
    return m.cols() - rank_of(m, f, opt).rank;
}

}  // namespace syzlab
