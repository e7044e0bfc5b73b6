// syzlab -- exact computation of Koszul cohomology for graded section systems.
//
// Subcommands:
//   betti     table of dim K_{p,q} over a (p, q) rectangle
//   jets      check a zero-cycle / search for a violating cycle
//   sweep     K_{p,1} along a family L_d = d*L with a jet-based prediction
//   mh1       h^0/h^1 of (p+1)-fold kernel-bundle tensor powers twisted by B
//   duality   the weight-one pairing on curves (canonical vs trivial twist)
//   edges     vanishing checks on the border rows of the betti table
//   validate  structural checks of a section system (commutativity, ranges)
//   export    dump any built-in system to the portable JSON algebra format
//
// Exit codes: 0 success, 1 bad input or failed validation, 2 size budget hit.

#include <cctype>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "syzlab/asymptotics.hpp"
#include "syzlab/cache.hpp"
#include "syzlab/elliptic.hpp"
#include "syzlab/file_algebra.hpp"
#include "syzlab/jets.hpp"
#include "syzlab/kernel_criterion.hpp"
#include "syzlab/koszul.hpp"
#include "syzlab/projline.hpp"
#include "syzlab/toric.hpp"

namespace {

using namespace syzlab;
using nlohmann::json;

unsigned default_jobs() {
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

struct common_opts {
    std::string system = "projline";
    long b = 0;
    long d = 0;
    std::string curve_a = "0";
    std::string curve_b = "1";
    std::string poly_b;
    std::string poly_l;
    std::string path;

    std::string field = "auto";
    std::string format = "text";
    std::string cache_dir;
    unsigned jobs = default_jobs();
    std::uint64_t seed = 0;
    bool seed_given = false;
    std::size_t budget = 200000;
    bool timings = false;

    // resolved at run time
    std::optional<kv_cache> cache;

    field_spec parsed_field() const { return field_spec::parse(field); }

    koszul_options koszul() {
        koszul_options ko;
        ko.field = parsed_field();
        ko.seed = seed;
        ko.entry_budget = budget;
        ko.jobs = jobs;
        if (cache) ko.cache = &*cache;
        return ko;
    }

    kernel_options kernel() const {
        kernel_options ko;
        ko.field = parsed_field();
        ko.seed = seed;
        ko.entry_budget = budget;
        return ko;
    }
};

// Attach the options shared by every subcommand.  `with_d` is false for
// commands that supply the degree themselves (sweep ranges over it).
void add_common(CLI::App* cmd, common_opts& o, bool with_d) {
    cmd->add_option("--system", o.system, "backend: projline | elliptic | toric | file")
        ->check(CLI::IsMember({"projline", "elliptic", "toric", "file"}))
        ->capture_default_str();
    cmd->add_option("--b", o.b, "twist degree b of B (projline: O(b); elliptic: O(b*O))");
    if (with_d) cmd->add_option("--d", o.d, "degree d of L (projline: O(d); elliptic: O(d*O))");
    cmd->add_option("--A", o.curve_a, "elliptic coefficient A in y^2 = x^3 + A x + B")
        ->capture_default_str();
    cmd->add_option("--Bw", o.curve_b, "elliptic coefficient B in y^2 = x^3 + A x + B")
        ->capture_default_str();
    cmd->add_option("--pb", o.poly_b, "toric polytope for B (e.g. point:2, simplex:2:1, raw list)");
    cmd->add_option("--pl", o.poly_l, "toric polytope for L (e.g. simplex:2:3, box:2:1)");
    cmd->add_option("--path", o.path, "algebra file for --system file");

    cmd->add_option("--field", o.field,
                    "coefficients: auto | rational | prime[:P] | multi:N (auto = multi:3)")
        ->capture_default_str();
    cmd->add_option("--format", o.format, "output format")
        ->check(CLI::IsMember({"text", "json", "csv"}))
        ->capture_default_str();
    cmd->add_option("--cache", o.cache_dir,
                    "rank cache directory (default from SYZLAB_CACHE if set)");
    cmd->add_option("--jobs", o.jobs, "worker threads for rank computations")
        ->capture_default_str();
    cmd->add_option("--seed", o.seed, "seed for prime draws and randomized searches");
    cmd->add_option("--budget", o.budget, "max nonzero entries per assembled matrix")
        ->capture_default_str();
    cmd->add_flag("--timings", o.timings, "append wall-clock timing to the output");
}

// Must run after parsing: draws a seed when none was given, resolves the
// cache directory from the environment.
void finalize(CLI::App* cmd, common_opts& o) {
    o.seed_given = cmd->count("--seed") > 0;
    if (!o.seed_given) {
        std::random_device rd;
        o.seed = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
    }
    if (o.cache_dir.empty()) {
        if (const char* env = std::getenv("SYZLAB_CACHE")) o.cache_dir = env;
    }
    if (!o.cache_dir.empty()) o.cache.emplace(o.cache_dir);
}

std::unique_ptr<graded_section_system> make_system(const common_opts& o, bool with_d = true) {
    if (o.system == "projline") {
        if (with_d && o.d < 1) throw parse_error("projline: --d is required (>= 1)");
        return std::make_unique<projline_system>(o.b, with_d ? o.d : 1);
    }
    if (o.system == "elliptic") {
        if (with_d && o.d < 1) throw parse_error("elliptic: --d is required (>= 1)");
        return std::make_unique<elliptic_system>(parse_rational(o.curve_a),
                                                 parse_rational(o.curve_b), o.b,
                                                 with_d ? o.d : 3);
    }
    if (o.system == "toric") {
        if (o.poly_l.empty()) throw parse_error("toric: --pl (polytope of L) is required");
        const lattice_set l = parse_polytope(o.poly_l);
        lattice_set b;
        if (o.poly_b.empty())
            b = {lattice_point(l.front().size(), 0)};  // default B = trivial bundle
        else
            b = parse_polytope(o.poly_b);
        return std::make_unique<toric_system>(std::move(b), std::move(l));
    }
    if (o.system == "file") {
        if (o.path.empty()) throw parse_error("file: --path is required");
        return file_algebra_system::load(o.path);
    }
    throw parse_error("unknown system '" + o.system + "'");
}

system_family make_family(const common_opts& o) {
    if (o.system == "projline") return projline_family(o.b);
    if (o.system == "elliptic")
        return elliptic_family(parse_rational(o.curve_a), parse_rational(o.curve_b), o.b);
    if (o.system == "toric") {
        if (o.poly_l.empty()) throw parse_error("toric: --pl (polytope of L) is required");
        const lattice_set l = parse_polytope(o.poly_l);
        lattice_set b;
        if (o.poly_b.empty())
            b = {lattice_point(l.front().size(), 0)};
        else
            b = parse_polytope(o.poly_b);
        return toric_family(b, l);
    }
    throw parse_error("sweep supports the projline, elliptic and toric backends");
}

std::string upper(std::string s) {
    for (char& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    return s;
}

const char* yes_no(bool v) { return v ? "yes" : "no"; }

struct timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    long long ms() const {
        return std::chrono::duration_cast<std::chrono::milliseconds>(
                   std::chrono::steady_clock::now() - start)
            .count();
    }
};

void emit_json(const json& j, const common_opts& o, const timer& t) {
    json out = j;
    if (o.timings) out["wall_ms"] = t.ms();
    std::cout << out.dump(2) << "\n";
}

void emit_text_tail(const common_opts& o, const timer& t) {
    if (o.timings) std::cout << "wall_ms " << t.ms() << "\n";
}

// ---------------------------------------------------------------------------
// betti
// ---------------------------------------------------------------------------

int run_betti(common_opts& o, long p_max, long q_max) {
    const timer t;
    const auto sys = make_system(o);
    koszul_lab lab(*sys, o.koszul());
    const betti_result table = lab.betti(0, p_max, 0, q_max);

    bool all_ok = true, all_certified = true;
    for (const auto& c : table.cells) {
        all_ok = all_ok && c.ok;
        if (c.ok) all_certified = all_certified && c.value.certified;
    }

    if (o.format == "json") {
        json j;
        j["command"] = "betti";
        j["system"] = sys->name();
        j["field"] = o.parsed_field().to_string();
        j["seed"] = o.seed;
        j["p_min"] = table.p_min;
        j["p_max"] = table.p_max;
        j["q_min"] = table.q_min;
        j["q_max"] = table.q_max;
        j["certified"] = all_certified;
        json cells = json::array();
        for (const auto& c : table.cells) {
            json cj;
            cj["p"] = c.p;
            cj["q"] = c.q;
            cj["ok"] = c.ok;
            if (c.ok) {
                cj["dim"] = c.value.dim;
                cj["middle"] = c.value.middle;
                cj["rank_out"] = c.value.rank_out;
                cj["rank_in"] = c.value.rank_in;
                cj["certified"] = c.value.certified;
            } else {
                cj["error"] = c.error;
            }
            cells.push_back(std::move(cj));
        }
        j["cells"] = std::move(cells);
        emit_json(j, o, t);
    } else if (o.format == "csv") {
        std::cout << "# seed " << o.seed << "\n";
        std::cout << "p,q,dim,middle,rank_out,rank_in,certified,error\n";
        for (const auto& c : table.cells) {
            std::cout << c.p << "," << c.q << ",";
            if (c.ok)
                std::cout << c.value.dim << "," << c.value.middle << "," << c.value.rank_out << ","
                          << c.value.rank_in << "," << (c.value.certified ? 1 : 0) << ",";
            else
                std::cout << ",,,,," << "\"" << c.error << "\"";
            std::cout << "\n";
        }
    } else {
        std::cout << "seed " << o.seed << "\n";
        std::cout << "system " << sys->name() << "\n";
        std::cout << "field " << o.parsed_field().to_string() << "\n";
        std::cout << "dim V = " << sys->dim_v() << ", table of dim K_{p,q}\n";
        std::cout << std::setw(5) << "q\\p";
        for (long p = 0; p <= table.p_max; ++p) std::cout << std::setw(7) << p;
        std::cout << "\n";
        for (long q = 0; q <= table.q_max; ++q) {
            std::cout << std::setw(5) << q;
            for (long p = 0; p <= table.p_max; ++p) {
                const betti_cell& c = table.at(p, q);
                if (!c.ok)
                    std::cout << std::setw(7) << "!";
                else if (c.value.dim == 0)
                    std::cout << std::setw(7) << ".";
                else
                    std::cout << std::setw(7) << c.value.dim;
            }
            std::cout << "\n";
        }
        std::cout << "certified " << yes_no(all_certified) << "\n";
        if (!all_ok) {
            for (const auto& c : table.cells)
                if (!c.ok)
                    std::cout << "cell (" << c.p << "," << c.q << ") failed: " << c.error << "\n";
        }
        emit_text_tail(o, t);
    }
    return 0;
}

// ---------------------------------------------------------------------------
// jets check / jets search
// ---------------------------------------------------------------------------

int run_jets_check(common_opts& o, const std::string& cycle_text) {
    const timer t;
    const auto sys = make_system(o);
    const zero_cycle cycle = parse_cycle(*sys, cycle_text);
    const conditions_result res =
        imposes_independent_conditions(*sys, section_space::w(0), cycle);

    if (o.format == "json") {
        json j;
        j["command"] = "jets check";
        j["system"] = sys->name();
        j["cycle"] = cycle_to_string(*sys, cycle);
        j["degree"] = cycle_degree(cycle);
        j["rank"] = res.rank;
        j["target"] = res.target;
        j["independent"] = res.independent;
        emit_json(j, o, t);
    } else {
        std::cout << "system " << sys->name() << "\n";
        std::cout << "cycle " << cycle_to_string(*sys, cycle) << "\n";
        std::cout << "conditions on W_0: rank " << res.rank << " of " << res.target << ", "
                  << (res.independent ? "OK" : "FAILS") << "\n";
        emit_text_tail(o, t);
    }
    return 0;
}

int run_jets_search(common_opts& o, unsigned p, std::size_t trials, std::size_t pool,
                    bool no_closed_form) {
    const timer t;
    const auto sys = make_system(o);
    jva_options jo;
    jo.trials = trials;
    jo.seed = o.seed;
    jo.pool = pool;
    jo.allow_closed_form = !no_closed_form;
    const jva_result res = test_jet_very_ample(*sys, p, jo);

    const char* verdict = res.v == jva_result::verdict::yes
                              ? "YES"
                              : (res.v == jva_result::verdict::no ? "NO" : "UNKNOWN");

    if (o.format == "json") {
        json j;
        j["command"] = "jets search";
        j["system"] = sys->name();
        j["seed"] = o.seed;
        j["p"] = p;
        j["verdict"] = verdict;
        j["via_closed_form"] = res.via_closed_form;
        if (res.witness) {
            j["witness"] = cycle_to_string(*sys, *res.witness);
            j["witness_rank"] = res.witness_rank;
            j["witness_target"] = res.witness_target;
        }
        if (!res.detail.empty()) j["detail"] = res.detail;
        emit_json(j, o, t);
    } else {
        std::cout << "seed " << o.seed << "\n";
        std::cout << "system " << sys->name() << "\n";
        std::cout << "p " << p << "\n";
        std::cout << "verdict " << verdict << (res.via_closed_form ? " (closed form)" : "")
                  << "\n";
        if (res.witness) {
            std::cout << "witness " << cycle_to_string(*sys, *res.witness) << "\n";
            std::cout << "witness rank " << res.witness_rank << " of " << res.witness_target
                      << ", FAILS\n";
        }
        if (!res.detail.empty()) std::cout << "note " << res.detail << "\n";
        emit_text_tail(o, t);
    }
    return 0;
}

// ---------------------------------------------------------------------------
// sweep
// ---------------------------------------------------------------------------

std::pair<long, long> parse_range(const std::string& text) {
    const auto pos = text.find("..");
    if (pos == std::string::npos)
        throw parse_error("range '" + text + "': expected lo..hi");
    try {
        const long lo = std::stol(text.substr(0, pos));
        const long hi = std::stol(text.substr(pos + 2));
        return {lo, hi};
    } catch (const std::exception&) {
        throw parse_error("range '" + text + "': expected lo..hi with integer bounds");
    }
}

int run_sweep(common_opts& o, unsigned p, const std::string& d_range, std::size_t trials,
              bool with_kernel_h) {
    const timer t;
    const auto [lo, hi] = parse_range(d_range);
    const system_family fam = make_family(o);

    sweep_options so;
    so.koszul = o.koszul();
    so.jva.trials = trials;
    so.jva.seed = o.seed;
    so.with_kernel_h = with_kernel_h;
    so.kernel = o.kernel();
    const sweep_result res = run_sweep(fam, p, lo, hi, so);

    if (o.format == "json") {
        json j;
        j["command"] = "sweep";
        j["family"] = fam.description;
        j["field"] = o.parsed_field().to_string();
        j["seed"] = o.seed;
        j["p"] = res.p;
        j["d_min"] = res.d_min;
        j["d_max"] = res.d_max;
        j["prediction"] = res.prediction;
        j["conclusive"] = res.conclusive;
        j["matched"] = res.matched;
        if (res.onset) j["onset"] = *res.onset;
        if (!res.note.empty()) j["note"] = res.note;
        if (res.jva.witness) j["witness"] = cycle_to_string(*fam.at(res.d_min), *res.jva.witness);
        json entries = json::array();
        for (const auto& e : res.entries) {
            json ej;
            ej["d"] = e.d;
            ej["r"] = e.r_d;
            ej["dim"] = e.kp1.dim;
            ej["certified"] = e.kp1.certified;
            if (e.kernel_h) {
                ej["kernel_h0"] = e.kernel_h->h0;
                ej["kernel_h1"] = e.kernel_h->h1;
            }
            entries.push_back(std::move(ej));
        }
        j["entries"] = std::move(entries);
        emit_json(j, o, t);
    } else if (o.format == "csv") {
        std::cout << "# seed " << o.seed << "\n";
        std::cout << "d,r,dim" << (with_kernel_h ? ",kernel_h0,kernel_h1" : "") << "\n";
        for (const auto& e : res.entries) {
            std::cout << e.d << "," << e.r_d << "," << e.kp1.dim;
            if (with_kernel_h) {
                std::cout << ",";
                if (e.kernel_h) std::cout << e.kernel_h->h0 << "," << e.kernel_h->h1;
                else std::cout << ",";
            }
            std::cout << "\n";
        }
    } else {
        std::cout << "seed " << o.seed << "\n";
        std::cout << "family " << fam.description << "\n";
        std::cout << "field " << o.parsed_field().to_string() << "\n";
        std::cout << "p " << p << ", d " << res.d_min << ".." << res.d_max << "\n";
        std::cout << "prediction " << upper(res.prediction) << "\n";
        if (res.jva.witness)
            std::cout << "witness " << cycle_to_string(*fam.at(res.d_min), *res.jva.witness)
                      << "\n";
        std::cout << std::setw(5) << "d" << std::setw(7) << "r" << std::setw(12) << "dim K_{p,1}";
        if (with_kernel_h) std::cout << std::setw(12) << "h1(kernel)";
        std::cout << "\n";
        for (const auto& e : res.entries) {
            std::cout << std::setw(5) << e.d << std::setw(7) << e.r_d << std::setw(12)
                      << e.kp1.dim;
            if (with_kernel_h) {
                if (e.kernel_h)
                    std::cout << std::setw(12) << e.kernel_h->h1;
                else
                    std::cout << std::setw(12) << "-";
            }
            std::cout << "\n";
        }
        if (res.onset) std::cout << "onset d = " << *res.onset << "\n";
        std::cout << "conclusive " << yes_no(res.conclusive) << "\n";
        std::cout << "matched " << yes_no(res.matched) << "\n";
        if (!res.note.empty()) std::cout << "note " << res.note << "\n";
        emit_text_tail(o, t);
    }
    return 0;
}

// ---------------------------------------------------------------------------
// mh1
// ---------------------------------------------------------------------------

int run_mh1(common_opts& o, unsigned p) {
    const timer t;
    const auto sys = make_system(o);
    const kernel_h_report rep = tensor_power_h(*sys, p, o.kernel());

    if (o.format == "json") {
        json j;
        j["command"] = "mh1";
        j["system"] = sys->name();
        j["field"] = o.parsed_field().to_string();
        j["seed"] = o.seed;
        j["p"] = rep.p;
        j["dim_e0"] = rep.dim_e0;
        j["dim_e1"] = rep.dim_e1;
        j["dim_e2"] = rep.dim_e2;
        j["rank_d0"] = rep.rank_d0;
        j["rank_d1"] = rep.rank_d1;
        j["h0"] = rep.h0;
        j["h1"] = rep.h1;
        j["certified"] = rep.certified;
        emit_json(j, o, t);
    } else {
        std::cout << "seed " << o.seed << "\n";
        std::cout << "system " << sys->name() << "\n";
        std::cout << "field " << o.parsed_field().to_string() << "\n";
        std::cout << "p " << p << " (tensor power p+1 = " << (p + 1) << ")\n";
        std::cout << "resolution dims " << rep.dim_e0 << " " << rep.dim_e1 << " " << rep.dim_e2
                  << ", ranks " << rep.rank_d0 << " " << rep.rank_d1 << "\n";
        std::cout << "h0 " << rep.h0 << "\n";
        std::cout << "h1 " << rep.h1 << "\n";
        std::cout << "certified " << yes_no(rep.certified) << "\n";
        if (rep.h1 == 0)
            std::cout << "criterion: h1 = 0 forces K_{" << p << ",1} = 0\n";
        emit_text_tail(o, t);
    }
    return 0;
}

// ---------------------------------------------------------------------------
// duality
// ---------------------------------------------------------------------------

int run_duality(common_opts& o, long p) {
    const timer t;
    const auto sys = make_system(o);
    const duality_pair_result res = duality_pair(*sys, p, o.koszul());

    if (o.format == "json") {
        json j;
        j["command"] = "duality";
        j["system"] = sys->name();
        j["field"] = o.parsed_field().to_string();
        j["seed"] = o.seed;
        j["p"] = res.p;
        j["p_dual"] = res.p_dual;
        j["lhs"] = res.lhs;
        j["rhs"] = res.rhs;
        j["equal"] = res.equal();
        j["certified"] = res.certified;
        emit_json(j, o, t);
    } else {
        std::cout << "seed " << o.seed << "\n";
        std::cout << "system " << sys->name() << "\n";
        std::cout << "field " << o.parsed_field().to_string() << "\n";
        std::cout << "lhs dim K_{" << res.p << ",1}(X, K_X; L) = " << res.lhs << "\n";
        std::cout << "rhs dim K_{" << res.p_dual << ",1}(X; L) = " << res.rhs << "\n";
        std::cout << "equal " << yes_no(res.equal()) << "\n";
        std::cout << "certified " << yes_no(res.certified) << "\n";
        emit_text_tail(o, t);
    }
    return 0;
}

// ---------------------------------------------------------------------------
// edges
// ---------------------------------------------------------------------------

int run_edges(common_opts& o, long p_max, long q_max) {
    const timer t;
    const auto sys = make_system(o);
    const edges_report rep = scan_table_edges(*sys, p_max, q_max, o.koszul());

    if (o.format == "json") {
        json j;
        j["command"] = "edges";
        j["system"] = sys->name();
        j["field"] = o.parsed_field().to_string();
        j["seed"] = o.seed;
        j["p_max"] = rep.p_max;
        j["q_max"] = rep.q_max;
        j["high_rows_vanish"] = rep.high_rows_vanish;
        j["bottom_row_matches"] = rep.bottom_row_matches;
        j["failures"] = rep.failures;
        json bottom = json::array();
        for (long p = 0; p <= rep.p_max; ++p) bottom.push_back(rep.table.at(p, 0).value.dim);
        j["bottom_row"] = std::move(bottom);
        emit_json(j, o, t);
    } else {
        std::cout << "seed " << o.seed << "\n";
        std::cout << "system " << sys->name() << "\n";
        std::cout << "field " << o.parsed_field().to_string() << "\n";
        std::cout << "rows q >= dim X + 2 vanish: " << yes_no(rep.high_rows_vanish) << "\n";
        std::cout << "bottom row nonzero exactly for p < dim W_0: "
                  << yes_no(rep.bottom_row_matches) << "\n";
        for (const auto& f : rep.failures) std::cout << "failure: " << f << "\n";
        emit_text_tail(o, t);
    }
    return 0;
}

// ---------------------------------------------------------------------------
// validate
// ---------------------------------------------------------------------------

int run_validate(common_opts& o, long m_max, std::size_t triple_budget) {
    const timer t;
    const auto sys = make_system(o);
    validation_options vo;
    vo.m_max = m_max;
    vo.triple_budget = triple_budget;
    vo.seed = o.seed;
    const validation_report rep = validate_system(*sys, vo);

    if (o.format == "json") {
        json j;
        j["command"] = "validate";
        j["system"] = sys->name();
        j["seed"] = o.seed;
        j["ok"] = rep.ok;
        j["triples_checked"] = rep.triples_checked;
        j["sampled"] = rep.sampled;
        j["violations"] = rep.violations;
        emit_json(j, o, t);
    } else {
        std::cout << "seed " << o.seed << "\n";
        std::cout << "system " << sys->name() << "\n";
        std::cout << "triples checked " << rep.triples_checked << (rep.sampled ? " (sampled)" : "")
                  << "\n";
        for (const auto& v : rep.violations) std::cout << "violation: " << v << "\n";
        std::cout << "result " << (rep.ok ? "OK" : "INVALID") << "\n";
        emit_text_tail(o, t);
    }
    return rep.ok ? 0 : 1;
}

// ---------------------------------------------------------------------------
// export
// ---------------------------------------------------------------------------

int run_export(common_opts& o, const std::string& out_path, long m_max,
               const std::vector<std::string>& jet_point_texts, unsigned jet_orders) {
    const timer t;
    const auto sys = make_system(o);
    std::vector<point> pts;
    pts.reserve(jet_point_texts.size());
    for (const auto& s : jet_point_texts) pts.push_back(sys->parse_point(s));
    const json j = file_algebra_system::dump(*sys, m_max, pts, jet_orders);
    const std::string text = j.dump(2);

    if (out_path.empty() || out_path == "-") {
        std::cout << text << "\n";
    } else {
        std::ofstream out(out_path);
        if (!out) throw parse_error("export: cannot open '" + out_path + "' for writing");
        out << text << "\n";
        std::cout << "wrote " << out_path << " (m_max " << m_max << ", dim V " << sys->dim_v()
                  << ")\n";
        emit_text_tail(o, t);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    std::ios::sync_with_stdio(false);

    CLI::App app{"syzlab: exact Koszul cohomology of graded section systems"};
    app.require_subcommand(1);

    common_opts o;
    int rc = 0;

    // betti
    long p_max = 3, q_max = 3;
    CLI::App* betti = app.add_subcommand("betti", "table of dim K_{p,q}");
    add_common(betti, o, true);
    betti->add_option("--pmax", p_max, "largest p")->capture_default_str();
    betti->add_option("--qmax", q_max, "largest q")->capture_default_str();
    betti->callback([&] {
        finalize(betti, o);
        rc = run_betti(o, p_max, q_max);
    });

    // jets (check | search)
    CLI::App* jets = app.add_subcommand("jets", "jet-imposition tests on zero-cycles");
    jets->require_subcommand(1);
    std::string cycle_text;
    CLI::App* jcheck = jets->add_subcommand(
        "check", "rank of the conditions a given cycle imposes on W_0");
    add_common(jcheck, o, true);
    jcheck->add_option("cycle", cycle_text, "cycle literal, e.g. \"0 + 1 + 2\" or \"0^3\"")
        ->required();
    jcheck->callback([&] {
        finalize(jcheck, o);
        rc = run_jets_check(o, cycle_text);
    });

    unsigned jets_p = 1;
    std::size_t trials = 10000, pool = 24;
    bool no_closed_form = false;
    CLI::App* jsearch =
        jets->add_subcommand("search", "look for a cycle violating p-jet very ampleness");
    add_common(jsearch, o, true);
    jsearch->add_option("--p", jets_p, "jet order to test")->capture_default_str();
    jsearch->add_option("--trials", trials, "random candidates to try")->capture_default_str();
    jsearch->add_option("--pool", pool, "sample-point pool size")->capture_default_str();
    jsearch->add_flag("--no-closed-form", no_closed_form,
                      "skip backend closed forms; always search");
    jsearch->callback([&] {
        finalize(jsearch, o);
        rc = run_jets_search(o, jets_p, trials, pool, no_closed_form);
    });

    // sweep
    unsigned sweep_p = 1;
    std::string d_range;
    bool with_kernel_h = false;
    CLI::App* sweep = app.add_subcommand("sweep", "K_{p,1} along L_d = d*L with a prediction");
    add_common(sweep, o, false);
    sweep->add_option("--p", sweep_p, "syzygy index p")->capture_default_str();
    sweep->add_option("--d-range", d_range, "degree window lo..hi")->required();
    sweep->add_option("--trials", trials, "random candidates for the jet search")
        ->capture_default_str();
    sweep->add_flag("--kernel-h", with_kernel_h, "also report kernel-bundle h^1 per degree");
    sweep->callback([&] {
        finalize(sweep, o);
        rc = run_sweep(o, sweep_p, d_range, trials, with_kernel_h);
    });

    // mh1
    unsigned mh1_p = 1;
    CLI::App* mh1 = app.add_subcommand(
        "mh1", "h^0/h^1 of the (p+1)-fold kernel-bundle power twisted by B");
    add_common(mh1, o, true);
    mh1->add_option("--p", mh1_p, "syzygy index p")->capture_default_str();
    mh1->callback([&] {
        finalize(mh1, o);
        rc = run_mh1(o, mh1_p);
    });

    // duality
    long duality_p = 0;
    CLI::App* duality = app.add_subcommand("duality", "weight-one duality pairing on curves");
    add_common(duality, o, true);
    duality->add_option("--p", duality_p, "syzygy index p on the canonical side")
        ->capture_default_str();
    duality->callback([&] {
        finalize(duality, o);
        rc = run_duality(o, duality_p);
    });

    // edges
    long e_pmax = 3, e_qmax = 4;
    CLI::App* edges = app.add_subcommand("edges", "border-row checks of the betti table");
    add_common(edges, o, true);
    edges->add_option("--pmax", e_pmax, "largest p")->capture_default_str();
    edges->add_option("--qmax", e_qmax, "largest q (>= dim X + 2 to see vanishing rows)")
        ->capture_default_str();
    edges->callback([&] {
        finalize(edges, o);
        rc = run_edges(o, e_pmax, e_qmax);
    });

    // validate
    long v_mmax = 2;
    std::size_t v_budget = 20000;
    CLI::App* validate = app.add_subcommand("validate", "structural checks of a section system");
    add_common(validate, o, true);
    validate->add_option("--m-max", v_mmax, "check commutativity into W_m for m <= m-max")
        ->capture_default_str();
    validate->add_option("--triple-budget", v_budget, "sample above this many triples")
        ->capture_default_str();
    validate->callback([&] {
        finalize(validate, o);
        rc = run_validate(o, v_mmax, v_budget);
    });

    // export
    std::string out_path;
    long x_mmax = 3;
    std::vector<std::string> jet_points;
    unsigned jet_orders = 0;
    CLI::App* exp = app.add_subcommand("export", "dump the system as a JSON algebra file");
    add_common(exp, o, true);
    exp->add_option("--out", out_path, "output path ('-' or empty for stdout)");
    exp->add_option("--mmax", x_mmax, "largest grade to tabulate")->capture_default_str();
    exp->add_option("--jet-point", jet_points, "point literal to precompute jets at (repeatable)");
    exp->add_option("--jet-orders", jet_orders, "expand jets up to this order at each point")
        ->capture_default_str();
    exp->callback([&] {
        finalize(exp, o);
        rc = run_export(o, out_path, x_mmax, jet_points, jet_orders);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const size_budget_exceeded& e) {
        std::cerr << "error (budget): " << e.what() << "\n";
        return 2;
    } catch (const error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return rc;
}
