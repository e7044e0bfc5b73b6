#pragma once

/*
 * Graded section systems.
 *
 * A section system packages everything the syzygy machinery needs to know
 * about a polarized variety (X, B, L):
 *
 *   V      = H^0(L)                      (the space against which we wedge)
 *   W_m    = H^0(B + mL)  for m >= 0     (the graded module; grades below 0
 *                                         are zero by convention)
 *   multiply : V x W_m -> W_{m+1}        (the module structure, entrywise
 *                                         exact over the rationals)
 *   jets   : Taylor coefficients of sections at rational points, normalized
 *            so that row (alpha) of a jet matrix is (d^alpha s / alpha!)(pt)
 *
 * Backends fix explicit ordered bases for V and every W_m; all indices in
 * the rest of the library refer to those bases.  Every backend's name()
 * fully determines its tables, which makes names safe as cache keys.
 */

#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "numeric.hpp"

namespace syzlab {

// A rational point of X in a backend-specific chart.
struct point {
    enum class kind { affine, infinity, named };
    kind k = kind::affine;
    std::vector<Rational> coords;  // affine coordinates, dim_x() of them
    long long id = 0;              // label for backends with named points

    static point affine(std::vector<Rational> c) { return {kind::affine, std::move(c), 0}; }
    static point at_infinity() { return {kind::infinity, {}, 0}; }
    static point named(long long id) { return {kind::named, {}, id}; }

    friend bool operator==(const point& a, const point& b) {
        return a.k == b.k && a.coords == b.coords && a.id == b.id;
    }
};

// Which space of sections an index refers to: V = H^0(L) or a grade W_m.
struct section_space {
    enum class which { V, W };
    which s = which::V;
    long m = 0;

    static section_space v() { return {which::V, 0}; }
    static section_space w(long m) { return {which::W, m}; }

    friend bool operator==(const section_space& a, const section_space& b) {
        return a.s == b.s && (a.s == which::V || a.m == b.m);
    }
};

// Sparse vector in the basis of some W_m: sorted (index, value) pairs.
using sparse_vec = std::vector<std::pair<std::uint32_t, Rational>>;

// A zero-cycle: distinct points with positive multiplicities.
struct cycle_part {
    point pt;
    unsigned mult = 1;

    friend bool operator==(const cycle_part& a, const cycle_part& b) {
        return a.pt == b.pt && a.mult == b.mult;
    }
};
using zero_cycle = std::vector<cycle_part>;

inline long cycle_degree(const zero_cycle& z) {
    long deg = 0;
    for (const auto& part : z) deg += part.mult;
    return deg;
}

inline bool cycle_is_reduced(const zero_cycle& z) {
    for (const auto& part : z)
        if (part.mult != 1) return false;
    return true;
}

class graded_section_system {
  public:
    virtual ~graded_section_system() = default;

    // Stable, parameter-complete description (usable as a cache key).
    virtual std::string name() const = 0;
    virtual unsigned dim_x() const = 0;

    virtual std::size_t dim_v() const = 0;
    virtual std::size_t dim_w(long m) const = 0;  // 0 for m < 0

    // True when B + mL has no higher cohomology for every m >= 0; the
    // kernel-bundle criterion is only meaningful under this hypothesis.
    virtual bool higher_cohomology_vanishes() const = 0;

    // v_j * w_i in the basis of W_{m+1}.
    virtual sparse_vec multiply(long m, std::size_t v, std::size_t w) const = 0;

    // Normalized Taylor coefficient (d^alpha s / alpha!)(pt) of section
    // `index` of `sp`; alpha has dim_x() entries.  Throws unsupported_point
    // where the backend has no chart (documented per backend).
    virtual Rational jet_coefficient(const section_space& sp, std::size_t index, const point& pt,
                                     const std::vector<unsigned>& alpha) const = 0;
    virtual bool supports_jets() const { return true; }

    virtual point parse_point(const std::string& text) const = 0;
    virtual std::string point_to_string(const point& pt) const = 0;

    // Distinct points usable for evaluation; may return fewer than requested
    // when the backend only knows finitely many rational points.
    virtual std::vector<point> sample_points(std::size_t count, std::mt19937_64& rng) const = 0;

    // Largest grade the backend can produce (nullopt = unbounded).  Bounded
    // backends (tabulated files) advertise it so validators can clamp.
    virtual std::optional<long> max_tabulated_grade() const { return std::nullopt; }

    // Curve-only data (drives the Riemann-Roch cross-check and duality).
    virtual std::optional<long> genus() const { return std::nullopt; }
    // (deg B, deg L) on a curve.
    virtual std::optional<std::pair<long, long>> line_bundle_degrees() const { return std::nullopt; }
    // Same variety, different twists.  Only curve backends support this.
    virtual std::unique_ptr<graded_section_system> rebased(long new_b, long new_d) const {
        throw unsupported_backend("'" + name() + "' cannot be rebased to other twists");
    }

    // Closed-form answer to "is B p-jet very ample", where the backend knows
    // one.  nullopt means: decide by computation.
    virtual std::optional<bool> jet_very_ample_closed_form(unsigned p) const { return std::nullopt; }

    // A backend-specific candidate degree-(p+1) cycle likely to violate
    // p-jet very ampleness of B (callers verify; nothing is trusted).
    // Repeated calls with increasing `attempt` may produce fresh candidates.
    virtual std::optional<zero_cycle> propose_violating_cycle(unsigned p, std::mt19937_64& rng,
                                                              std::size_t attempt) const {
        (void)p;
        (void)rng;
        (void)attempt;
        return std::nullopt;
    }
};

inline std::size_t dim_of(const graded_section_system& sys, const section_space& sp) {
    return sp.s == section_space::which::V ? sys.dim_v() : sys.dim_w(sp.m);
}

// All derivative multi-indices with |alpha| < bound, in graded order
// (ascending total degree, lexicographic within a degree).  There are
// binomial(n + bound - 1, n) of them; this is the row block one point of
// multiplicity `bound` contributes to a jet matrix.
inline std::vector<std::vector<unsigned>> multi_indices_below(unsigned n, unsigned bound) {
    std::vector<std::vector<unsigned>> out;
    std::vector<unsigned> cur(n, 0);
    for (unsigned total = 0; total < bound; ++total) {
        auto rec = [&](auto&& self, unsigned pos, unsigned left) -> void {
            if (pos + 1 == n) {
                cur[pos] = left;
                out.push_back(cur);
                return;
            }
            for (unsigned a = 0; a <= left; ++a) {
                cur[pos] = a;
                self(self, pos + 1, left - a);
            }
        };
        rec(rec, 0, total);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Structural validation
// ---------------------------------------------------------------------------

struct validation_report {
    bool ok = true;
    std::vector<std::string> violations;
    std::size_t triples_checked = 0;
    bool sampled = false;

    void fail(std::string what) {
        ok = false;
        if (violations.size() < 32) violations.push_back(std::move(what));
    }
};

struct validation_options {
    long m_max = 2;                    // commutativity checked for m in [0, m_max]
    std::size_t triple_budget = 20000; // switch to sampling above this many triples
    std::uint64_t seed = 1;
};

// Checks that the multiplication tables describe a commutative module:
// v1*(v2*w) == v2*(v1*w) in W_{m+2}, that every product lands in range, and
// (for curves with known degrees) that dimensions match Riemann-Roch in the
// nonspecial range.
inline validation_report validate_system(const graded_section_system& sys,
                                         const validation_options& opt = {}) {
    validation_report rep;

    const std::size_t nv = sys.dim_v();
    if (nv == 0) rep.fail("dim V = 0: L has no sections");

    // Checking commutativity at grade m needs products into W_{m+2}; clamp
    // for backends that only tabulate finitely many grades.
    long m_hi = opt.m_max;
    if (const auto cap = sys.max_tabulated_grade()) m_hi = std::min(m_hi, *cap - 2);

    // Riemann-Roch on curves: h^0 = deg - g + 1 once deg > 2g - 2.
    if (sys.dim_x() == 1 && sys.genus() && sys.line_bundle_degrees()) {
        const long g = *sys.genus();
        const auto [db, dl] = *sys.line_bundle_degrees();
        if (dl > 2 * g - 2) {
            const long expect = dl - g + 1;
            if (expect > 0 && sys.dim_v() != static_cast<std::size_t>(expect))
                rep.fail("dim V = " + std::to_string(sys.dim_v()) + " but deg L = " +
                         std::to_string(dl) + " forces " + std::to_string(expect));
        }
        for (long m = 0; m <= m_hi + 2; ++m) {
            const long deg = db + m * dl;
            if (deg > 2 * g - 2) {
                const long expect = std::max(0L, deg - g + 1);
                if (sys.dim_w(m) != static_cast<std::size_t>(expect))
                    rep.fail("dim W_" + std::to_string(m) + " = " + std::to_string(sys.dim_w(m)) +
                             " but degree " + std::to_string(deg) + " forces " +
                             std::to_string(expect));
            }
        }
    }
    for (long m = -3; m < 0; ++m)
        if (sys.dim_w(m) != 0) rep.fail("dim W_" + std::to_string(m) + " != 0 below grade zero");

    // accumulate v*w as a dense vector, verifying index ranges
    auto apply = [&](long m, std::size_t v, const std::vector<Rational>& w_dense,
                     std::vector<Rational>& out) -> bool {
        const std::size_t out_dim = sys.dim_w(m + 1);
        out.assign(out_dim, Rational(0));
        for (std::size_t wi = 0; wi < w_dense.size(); ++wi) {
            if (w_dense[wi] == 0) continue;
            for (const auto& [oi, val] : sys.multiply(m, v, wi)) {
                if (oi >= out_dim) {
                    rep.fail("multiply(m=" + std::to_string(m) + ",v=" + std::to_string(v) +
                             ",w=" + std::to_string(wi) + ") hits index " + std::to_string(oi) +
                             " outside W_" + std::to_string(m + 1));
                    return false;
                }
                out[oi] += val * w_dense[wi];
            }
        }
        return true;
    };

    // count the triples first to decide between exhaustive and sampled
    std::size_t total = 0;
    for (long m = 0; m <= m_hi; ++m)
        total += (nv * (nv - 1) / 2) * sys.dim_w(m);
    rep.sampled = total > opt.triple_budget;
    std::mt19937_64 rng(opt.seed);

    std::vector<Rational> w_unit, t1, t2, r12, r21;
    auto check_triple = [&](long m, std::size_t v1, std::size_t v2, std::size_t w) {
        w_unit.assign(sys.dim_w(m), Rational(0));
        w_unit[w] = 1;
        if (!apply(m, v2, w_unit, t1) || !apply(m + 1, v1, t1, r12)) return;
        if (!apply(m, v1, w_unit, t2) || !apply(m + 1, v2, t2, r21)) return;
        if (r12 != r21)
            rep.fail("commutativity fails at (m=" + std::to_string(m) + ", v1=" +
                     std::to_string(v1) + ", v2=" + std::to_string(v2) + ", w=" +
                     std::to_string(w) + ")");
        ++rep.triples_checked;
    };

    if (!rep.sampled) {
        for (long m = 0; m <= m_hi; ++m)
            for (std::size_t v1 = 0; v1 < nv; ++v1)
                for (std::size_t v2 = v1 + 1; v2 < nv; ++v2)
                    for (std::size_t w = 0; w < sys.dim_w(m); ++w) check_triple(m, v1, v2, w);
    } else {
        for (std::size_t trial = 0; trial < opt.triple_budget && nv >= 2; ++trial) {
            const long m = static_cast<long>(rng() % (m_hi + 1));
            const std::size_t nw = sys.dim_w(m);
            if (nw == 0) continue;
            std::size_t v1 = rng() % nv, v2 = rng() % nv;
            if (v1 == v2) continue;
            check_triple(m, std::min(v1, v2), std::max(v1, v2), rng() % nw);
        }
    }
    return rep;
}

}  // namespace syzlab
