#pragma once

/*
 * Koszul cohomology of a graded section system.
 *
 * For V = H^0(L) and the graded module R with R_m = W_m (m >= 0), the group
 * K_{p,q} is the middle cohomology of
 *
 *   wedge^{p+1} V (x) W_{q-1}  ->  wedge^p V (x) W_q  ->  wedge^{p-1} V (x) W_{q+1}
 *
 * with the contraction-multiplication differential
 *
 *   d(v_{i_0} ^ ... ^ v_{i_p} (x) s) =
 *       sum_j (-1)^j  v_{i_0} ^ ... omit j ... ^ v_{i_p} (x) (v_{i_j} * s).
 *
 * Everything reduces to ranks of the maps
 *
 *   d_{p,q} : wedge^p V (x) W_q -> wedge^{p-1} V (x) W_{q+1}
 *
 * and the same rank serves as "outgoing" for the cell (p, q) and "incoming"
 * for (p-1, q+1), so ranks are memoized (in memory, and optionally on disk).
 *
 *   dim K_{p,q} = dim(wedge^p V (x) W_q) - rank d_{p,q} - rank d_{p+1,q-1}.
 *
 * A negative value is mathematically impossible (d compose d = 0 makes the
 * image sit inside the kernel); it is reported as negative_dimension and
 * treated as an assembly bug, never swallowed.
 *
 * Basis layout everywhere: index = (wedge rank) * dim W + (section index).
 */

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "cache.hpp"
#include "exterior.hpp"
#include "matrix.hpp"
#include "parallel.hpp"
#include "rank.hpp"
#include "sections.hpp"

namespace syzlab {

struct koszul_options {
    field_spec field = field_spec::multi(3);
    std::uint64_t seed = 0;
    std::size_t entry_budget = 200000;  // max nonzero entries per assembled map
    unsigned jobs = 1;
    kv_cache* cache = nullptr;
    rank_options rank_tuning;  // seed field is overridden per task
};

struct kpq_result {
    long p = 0, q = 0;
    std::size_t dim = 0;     // dim K_{p,q}
    std::size_t middle = 0;  // dim of the middle term
    std::size_t rank_out = 0, rank_in = 0;
    bool certified = false;
};

struct betti_cell {
    long p = 0, q = 0;
    bool ok = false;
    kpq_result value;
    std::string error;  // set when !ok (e.g. the entry budget was exceeded)
};

struct betti_result {
    long p_min = 0, p_max = 0, q_min = 0, q_max = 0;
    std::vector<betti_cell> cells;  // row-major: q outer, p inner

    const betti_cell& at(long p, long q) const {
        return cells[static_cast<std::size_t>((q - q_min) * (p_max - p_min + 1) + (p - p_min))];
    }
};

class koszul_lab {
  public:
    explicit koszul_lab(const graded_section_system& sys, koszul_options opt = {})
        : sys_(sys), opt_(std::move(opt)) {}

    const graded_section_system& system() const { return sys_; }
    const koszul_options& options() const { return opt_; }

    std::size_t middle_dim(long p, long q) const {
        if (p < 0 || p > static_cast<long>(sys_.dim_v()) || q < 0) return 0;
        return binomial_size_t(static_cast<unsigned>(sys_.dim_v()), static_cast<unsigned>(p)) *
               sys_.dim_w(q);
    }

    // The matrix of d_{p,q} : wedge^p V (x) W_q -> wedge^{p-1} V (x) W_{q+1}.
    exact_matrix map_matrix(long p, long q) const {
        const std::size_t nv = sys_.dim_v();
        const std::size_t src = middle_dim(p, q);
        const std::size_t dst = middle_dim(p - 1, q + 1);
        if (src == 0 || dst == 0 || p < 1)
            return exact_matrix(dst, src, {});
        const std::size_t wq = sys_.dim_w(q);
        const std::size_t wq1 = sys_.dim_w(q + 1);

        matrix_builder mb(dst, src, opt_.entry_budget);
        const auto wedges = wedge_basis(static_cast<unsigned>(nv), static_cast<unsigned>(p));
        for (std::size_t wr = 0; wr < wedges.size(); ++wr) {
            const wedge_index& w = wedges[wr];
            for (unsigned j = 0; j < w.size(); ++j) {
                const auto [rest, sign] = wedge_contract(w, j);
                const std::size_t rest_rank =
                    wedge_rank(rest, static_cast<unsigned>(nv));
                for (std::size_t s = 0; s < wq; ++s) {
                    const std::uint32_t col = static_cast<std::uint32_t>(wr * wq + s);
                    for (const auto& [out, val] : sys_.multiply(q, w[j], s)) {
                        const std::uint32_t row =
                            static_cast<std::uint32_t>(rest_rank * wq1 + out);
                        mb.add(row, col, sign > 0 ? val : -val);
                    }
                }
            }
        }
        return mb.build();
    }

    // Memoized rank of d_{p,q}; cache hits never rebuild the matrix.
    std::size_t map_rank(long p, long q) { return rank_info_for(p, q).rank; }

    kpq_result kpq(long p, long q) {
        kpq_result r;
        r.p = p;
        r.q = q;
        r.middle = middle_dim(p, q);
        if (r.middle == 0) {
            r.certified = true;
            return r;
        }
        const rank_record out = rank_info_for(p, q);
        const rank_record in = rank_info_for(p + 1, q - 1);
        r.rank_out = out.rank;
        r.rank_in = in.rank;
        r.certified = out.certified && in.certified;
        if (r.middle < r.rank_out + r.rank_in) {
            std::ostringstream os;
            os << "K_{" << p << "," << q << "}: middle " << r.middle << " < rank(out) "
               << r.rank_out << " + rank(in) " << r.rank_in
               << "; the assembled differentials cannot satisfy d*d = 0";
            throw negative_dimension(os.str());
        }
        r.dim = r.middle - r.rank_out - r.rank_in;
        return r;
    }

    // Whole rectangle of cells.  Ranks are computed in parallel (each rank
    // task draws its own seed from (seed, p, q), so results do not depend on
    // scheduling); per-cell failures such as budget overruns are recorded in
    // the cell instead of aborting the table.
    betti_result betti(long p_min, long p_max, long q_min, long q_max) {
        betti_result table;
        table.p_min = p_min;
        table.p_max = p_max;
        table.q_min = q_min;
        table.q_max = q_max;

        // every rank needed by some cell in the rectangle
        std::vector<std::pair<long, long>> tasks;
        for (long q = q_min; q <= q_max; ++q)
            for (long p = p_min; p <= p_max; ++p) {
                if (middle_dim(p, q) == 0) continue;
                tasks.emplace_back(p, q);
                tasks.emplace_back(p + 1, q - 1);
            }
        std::sort(tasks.begin(), tasks.end());
        tasks.erase(std::unique(tasks.begin(), tasks.end()), tasks.end());

        parallel_for(tasks.size(), opt_.jobs, [&](std::size_t i) {
            try {
                rank_info_for(tasks[i].first, tasks[i].second);
            } catch (const size_budget_exceeded&) {
                // remembered inside rank_info_for; cells will report it
            }
        });

        for (long q = q_min; q <= q_max; ++q)
            for (long p = p_min; p <= p_max; ++p) {
                betti_cell cell;
                cell.p = p;
                cell.q = q;
                try {
                    cell.value = kpq(p, q);
                    cell.ok = true;
                } catch (const size_budget_exceeded& e) {
                    cell.error = e.what();
                }
                table.cells.push_back(std::move(cell));
            }
        return table;
    }

  private:
    struct rank_record {
        std::size_t rank = 0;
        bool certified = false;
        std::string field;
        bool failed = false;
        std::string error;
    };

    std::string cache_key(long p, long q) const {
        std::ostringstream os;
        os << cache_key_version << "|" << sys_.name() << "|map(" << p << "," << q << ")|"
           << opt_.field.to_string();
        if (opt_.field.k != field_spec::kind::rational) os << "|seed=" << opt_.seed;
        return os.str();
    }

    rank_record rank_info_for(long p, long q) {
        const std::pair<long, long> key{p, q};
        {
            std::lock_guard<std::mutex> lock(mu_);
            const auto it = memo_.find(key);
            if (it != memo_.end()) return rethrow_or_return(it->second);
        }

        rank_record rec;
        if (middle_dim(p, q) == 0 || middle_dim(p - 1, q + 1) == 0 || p < 1) {
            rec.rank = 0;
            rec.certified = true;
            rec.field = "empty";
        } else if (opt_.cache && read_cached(p, q, rec)) {
            // disk hit
        } else {
            try {
                const exact_matrix m = map_matrix(p, q);
                rank_options ro = opt_.rank_tuning;
                std::ostringstream label;
                label << "map(" << p << "," << q << ")";
                ro.seed = derive_seed(opt_.seed, sys_.name() + "|" + label.str());
                const rank_result rr = rank_of(m, opt_.field, ro);
                rec.rank = rr.rank;
                rec.certified = rr.certified;
                rec.field = rr.field;
                if (opt_.cache) write_cached(p, q, rec);
            } catch (const size_budget_exceeded& e) {
                rec.failed = true;
                rec.error = e.what();
            }
        }

        std::lock_guard<std::mutex> lock(mu_);
        auto [it, inserted] = memo_.emplace(key, rec);
        return rethrow_or_return(it->second);
    }

    static rank_record rethrow_or_return(const rank_record& rec) {
        if (rec.failed) throw size_budget_exceeded(rec.error);
        return rec;
    }

    bool read_cached(long p, long q, rank_record& rec) const {
        const auto hit = opt_.cache->get(cache_key(p, q));
        if (!hit) return false;
        std::istringstream in(*hit);
        std::string tag;
        std::size_t rank = 0;
        int certified = 0;
        std::string field;
        if (!(in >> tag >> rank) || tag != "rank") return false;
        if (!(in >> tag >> certified) || tag != "certified") return false;
        if (!(in >> tag) || tag != "field" || !std::getline(in, field)) return false;
        rec.rank = rank;
        rec.certified = certified != 0;
        rec.field = field.empty() ? "cached" : field.substr(1) + " (cached)";
        return true;
    }

    void write_cached(long p, long q, const rank_record& rec) const {
        std::ostringstream os;
        os << "rank " << rec.rank << "\ncertified " << (rec.certified ? 1 : 0) << "\nfield "
           << rec.field << "\n";
        opt_.cache->put(cache_key(p, q), os.str());
    }

    const graded_section_system& sys_;
    koszul_options opt_;
    std::mutex mu_;
    std::map<std::pair<long, long>, rank_record> memo_;
};

// Verifies d_{p,q} after d_{p+1,q-1} composes to zero -- the structural
// identity the whole setup rests on.  Used by tests and the validate command.
inline bool koszul_square_is_zero(const graded_section_system& sys, long p, long q,
                                  const koszul_options& opt = {}) {
    koszul_lab lab(sys, opt);
    const exact_matrix outer = lab.map_matrix(p, q);
    const exact_matrix inner = lab.map_matrix(p + 1, q - 1);
    if (inner.cols() == 0 || outer.rows() == 0) return true;
    return compose_is_zero(outer, inner);
}

// ---------------------------------------------------------------------------
// Curve duality pairing
// ---------------------------------------------------------------------------

// On a curve X with r = dim H^0(L) - 1, weight-one groups pair up as
//
//   dim K_{p,1}(X, K_X; L)  =  dim K_{r-1-p, 1}(X, O_X; L),
//
// so the pair is computed on two rebasings of the same curve: B = K_X on the
// left (degree -2 for genus 0, degree 0 for genus 1) and B = O_X on the right.
struct duality_pair_result {
    long p = 0, p_dual = 0;
    std::size_t lhs = 0, rhs = 0;
    bool certified = false;
    bool equal() const { return lhs == rhs; }
};

inline duality_pair_result duality_pair(const graded_section_system& sys, long p,
                                        const koszul_options& opt = {}) {
    if (sys.dim_x() != 1 || !sys.genus() || !sys.line_bundle_degrees())
        throw unsupported_backend("duality pairing needs a curve backend with known genus");
    const long g = *sys.genus();
    if (g != 0 && g != 1)
        throw unsupported_backend("duality pairing implemented for genus 0 and 1 only");
    const long canonical_b = g == 0 ? -2 : 0;
    const long d = sys.line_bundle_degrees()->second;

    const auto left_sys = sys.rebased(canonical_b, d);
    const auto right_sys = sys.rebased(0, d);
    const long r = static_cast<long>(left_sys->dim_v()) - 1;

    duality_pair_result res;
    res.p = p;
    res.p_dual = r - 1 - p;
    if (res.p_dual < 0 || p < 0)
        throw index_error("duality pairing: p and r-1-p must both be nonnegative");

    koszul_lab left(*left_sys, opt), right(*right_sys, opt);
    const kpq_result lv = left.kpq(p, 1);
    const kpq_result rv = right.kpq(res.p_dual, 1);
    res.lhs = lv.dim;
    res.rhs = rv.dim;
    res.certified = lv.certified && rv.certified;
    return res;
}

}  // namespace syzlab
