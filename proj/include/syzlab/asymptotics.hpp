#pragma once

/*
 * Asymptotic behavior of weight-one syzygies along L_d = d A, d -> infinity.
 *
 * A family fixes the variety and B and produces the system at any d.  A sweep
 * computes dim K_{p,1} across a window of d, decides the jet verdict for B
 * once (B does not move with d), derives from it a prediction about the
 * eventual behavior -- a certified "B is p-jet very ample" predicts
 * vanishing, an exact reduced witness against it predicts nonvanishing --
 * and then reports where inside the window the observed indicator
 * stabilizes.  Nothing is ever extrapolated: a window whose stable tail is
 * shorter than two entries is reported as inconclusive, and `matched` only
 * compares honestly observed behavior with the prediction.
 */

#include <functional>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "elliptic.hpp"
#include "jets.hpp"
#include "kernel_criterion.hpp"
#include "koszul.hpp"
#include "projline.hpp"
#include "sections.hpp"
#include "toric.hpp"

namespace syzlab {

struct system_family {
    std::string description;
    std::function<std::unique_ptr<graded_section_system>(long d)> at;
    long gonality = 0;  // 0 = not a curve / unknown
};

inline system_family projline_family(long b) {
    system_family fam;
    fam.description = "projline(b=" + std::to_string(b) + ")";
    fam.at = [b](long d) -> std::unique_ptr<graded_section_system> {
        return std::make_unique<projline_system>(b, d);
    };
    fam.gonality = 1;
    return fam;
}

inline system_family elliptic_family(const Rational& A, const Rational& C, long b) {
    system_family fam;
    fam.description = "elliptic(A=" + rational_to_string(A) + ",C=" + rational_to_string(C) +
                      ",b=" + std::to_string(b) + ")";
    fam.at = [A, C, b](long d) -> std::unique_ptr<graded_section_system> {
        return std::make_unique<elliptic_system>(A, C, b, d);
    };
    fam.gonality = 2;
    return fam;
}

// L_d = the d-fold dilation of L, realized as the d-fold iterated sum of the
// lattice-point set (consistent with how grades are built).
inline system_family toric_family(const lattice_set& b_pts, const lattice_set& l_pts) {
    system_family fam;
    {
        toric_system probe(b_pts, l_pts);  // validates dimensions agree
        fam.description = "toric family over " + probe.name();
    }
    fam.at = [b_pts, l_pts](long d) -> std::unique_ptr<graded_section_system> {
        if (d < 1) throw parse_error("toric family: d must be >= 1");
        lattice_set dilated = l_pts;
        for (long k = 1; k < d; ++k) {
            lattice_set next;
            next.reserve(dilated.size() * l_pts.size());
            for (const auto& a : dilated)
                for (const auto& b : l_pts) {
                    lattice_point u = a;
                    for (std::size_t i = 0; i < u.size(); ++i) u[i] += b[i];
                    next.push_back(std::move(u));
                }
            dilated = normalize_lattice_set(std::move(next));
        }
        return std::make_unique<toric_system>(b_pts, dilated);
    };
    return fam;
}

// ---------------------------------------------------------------------------
// Sweeps
// ---------------------------------------------------------------------------

struct sweep_entry {
    long d = 0;
    long r_d = 0;  // dim V - 1 at this d
    kpq_result kp1;
    std::optional<kernel_h_report> kernel_h;  // only when requested and asserted
};

struct sweep_options {
    koszul_options koszul;
    jva_options jva;
    bool with_kernel_h = false;
    kernel_options kernel;
};

struct sweep_result {
    unsigned p = 0;
    long d_min = 0, d_max = 0;
    jva_result jva;
    std::string prediction;  // "vanishing" | "nonvanishing" | "none"
    std::vector<sweep_entry> entries;
    std::optional<long> onset;  // least d from which (dim == 0) stays constant
    bool conclusive = false;    // the constant tail has length >= 2
    bool matched = false;       // observed stable behavior equals the prediction
    std::string note;
};

inline sweep_result run_sweep(const system_family& family, unsigned p, long d_min, long d_max,
                              const sweep_options& opt = {}) {
    if (d_min > d_max || d_min < 1) throw parse_error("sweep: need 1 <= d_min <= d_max");
    sweep_result res;
    res.p = p;
    res.d_min = d_min;
    res.d_max = d_max;

    {
        const auto first = family.at(d_min);
        res.jva = test_jet_very_ample(*first, p, opt.jva);
    }
    if (res.jva.v == jva_result::verdict::yes)
        res.prediction = "vanishing";
    else if (res.jva.witness && cycle_is_reduced(*res.jva.witness))
        res.prediction = "nonvanishing";
    else
        res.prediction = "none";

    bool kernel_h_refused = false;
    for (long d = d_min; d <= d_max; ++d) {
        const auto sys = family.at(d);
        sweep_entry entry;
        entry.d = d;
        entry.r_d = static_cast<long>(sys->dim_v()) - 1;
        koszul_lab lab(*sys, opt.koszul);
        entry.kp1 = lab.kpq(static_cast<long>(p), 1);
        if (opt.with_kernel_h && !kernel_h_refused) {
            try {
                entry.kernel_h = tensor_power_h(*sys, p, opt.kernel);
            } catch (const hypothesis_not_asserted& e) {
                kernel_h_refused = true;
                res.note += std::string("kernel-bundle h^1 skipped: ") + e.what() + "\n";
            }
        }
        res.entries.push_back(std::move(entry));
    }

    // stabilization of the vanishing indicator, scanned from the window end
    const bool tail_value = res.entries.back().kp1.dim == 0;
    std::size_t start = res.entries.size();
    while (start > 0 && (res.entries[start - 1].kp1.dim == 0) == tail_value) --start;
    res.onset = res.entries[start].d;
    res.conclusive = res.entries.size() - start >= 2;
    if (res.conclusive && res.prediction != "none")
        res.matched = (tail_value ? "vanishing" : "nonvanishing") == res.prediction;

    if (family.gonality == 1 || family.gonality == 2) {
        std::ostringstream os;
        os << "curve of gonality " << family.gonality << ": for the trivial twist and large d, "
           << "K_{p,1}(X; L_d) is nonzero exactly for 1 <= p <= r_d - " << family.gonality;
        res.note += os.str();
    }
    return res;
}

// ---------------------------------------------------------------------------
// Edges of the Betti table
// ---------------------------------------------------------------------------

// Two structural facts about a table computed at a single (large) d:
//   - every row q >= dim X + 2 vanishes across the window;
//   - in the bottom row, K_{p,0} is nonzero exactly for p <= dim W_0 - 1.
// The report records each cell that disagrees.
struct edges_report {
    long p_max = 0, q_max = 0;
    bool high_rows_vanish = true;
    bool bottom_row_matches = true;
    std::vector<std::string> failures;
    betti_result table;
};

inline edges_report scan_table_edges(const graded_section_system& sys, long p_max, long q_max,
                                     const koszul_options& opt = {}) {
    edges_report rep;
    rep.p_max = p_max;
    rep.q_max = q_max;
    koszul_lab lab(sys, opt);
    rep.table = lab.betti(0, p_max, 0, q_max);

    const long q_high = static_cast<long>(sys.dim_x()) + 2;
    for (long q = q_high; q <= q_max; ++q)
        for (long p = 0; p <= p_max; ++p) {
            const betti_cell& cell = rep.table.at(p, q);
            if (!cell.ok) {
                rep.high_rows_vanish = false;
                rep.failures.push_back("K_{" + std::to_string(p) + "," + std::to_string(q) +
                                       "}: " + cell.error);
            } else if (cell.value.dim != 0) {
                rep.high_rows_vanish = false;
                rep.failures.push_back("K_{" + std::to_string(p) + "," + std::to_string(q) +
                                       "} = " + std::to_string(cell.value.dim) + " != 0");
            }
        }

    const long w0 = static_cast<long>(sys.dim_w(0));
    for (long p = 0; p <= p_max; ++p) {
        const betti_cell& cell = rep.table.at(p, 0);
        if (!cell.ok) {
            rep.bottom_row_matches = false;
            rep.failures.push_back("K_{" + std::to_string(p) + ",0}: " + cell.error);
            continue;
        }
        const bool expect_nonzero = p <= w0 - 1;
        if ((cell.value.dim != 0) != expect_nonzero) {
            rep.bottom_row_matches = false;
            rep.failures.push_back("K_{" + std::to_string(p) + ",0} = " +
                                   std::to_string(cell.value.dim) + (expect_nonzero
                                       ? " but the bottom row should be nonzero here"
                                       : " but the bottom row should vanish here"));
        }
    }
    return rep;
}

}  // namespace syzlab
