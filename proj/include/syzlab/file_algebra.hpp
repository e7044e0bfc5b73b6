#pragma once

/*
 * Section systems loaded from (and saved to) a JSON description.
 *
 * The format tabulates everything; nothing is recomputed:
 *
 * {
 *   "name":  "...",              // label; the content hash is appended on load
 *   "dim_x": 1,
 *   "m_min": 0,                  // grades below m_min (and above m_max) are absent
 *   "m_max": 4,
 *   "dims":  [2, 5, 8, 11, 14],  // dim W_m for m = m_min .. m_max
 *   "dim_v": 3,
 *   "hcv":   true,               // "no higher cohomology in any grade" assertion
 *   "mult":  [[m, v, w, out, num, den], ...],
 *   "jets":  [[space, index, point_id, a_1..a_{dim_x}, num, den], ...]  // optional
 * }
 *
 * mult rows give the nonzero coefficients of v * w_m in the basis of W_{m+1};
 * absent rows are zero.  In jets rows, space = -1 refers to V and space = m
 * to W_m; points are opaque integer labels, and the table is trusted to list
 * every nonzero coefficient for the orders it covers.  All fractions must be
 * in lowest terms with positive denominators, and unknown keys are rejected
 * so that typos fail loudly instead of silently changing the algebra.
 */

#include <algorithm>
#include <fstream>
#include <map>
#include <memory>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "sections.hpp"

namespace syzlab {

class file_algebra_system final : public graded_section_system {
  public:
    static std::unique_ptr<file_algebra_system> load(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw parse_error("cannot open '" + path + "'");
        std::ostringstream buf;
        buf << in.rdbuf();
        return from_json_text(buf.str());
    }

    static std::unique_ptr<file_algebra_system> from_json_text(const std::string& text) {
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(text);
        } catch (const std::exception& e) {
            throw parse_error(std::string("section system file is not valid JSON: ") + e.what());
        }
        return from_json(j, text);
    }

    std::string name() const override { return name_; }
    unsigned dim_x() const override { return dim_x_; }
    std::size_t dim_v() const override { return dim_v_; }
    std::size_t dim_w(long m) const override {
        if (m < 0 || m > m_max_) return 0;
        return dims_[static_cast<std::size_t>(m)];
    }
    bool higher_cohomology_vanishes() const override { return hcv_; }
    std::optional<long> max_tabulated_grade() const override { return m_max_; }

    sparse_vec multiply(long m, std::size_t v, std::size_t w) const override {
        if (m < 0 || v >= dim_v_ || w >= dim_w(m)) throw index_error("file algebra: multiply out of range");
        if (m >= m_max_)
            throw index_error("file algebra: grade " + std::to_string(m + 1) +
                              " is not tabulated (m_max = " + std::to_string(m_max_) + ")");
        const auto it = mult_.find(key(m, v, w));
        if (it == mult_.end()) return {};
        return it->second;
    }

    Rational jet_coefficient(const section_space& sp, std::size_t index, const point& pt,
                             const std::vector<unsigned>& alpha) const override {
        if (!has_jets_) throw unsupported_point("this section system file carries no jet table");
        if (pt.k != point::kind::named)
            throw unsupported_point("file algebra: points are named integer labels");
        if (!known_points_.count(pt.id))
            throw unsupported_point("file algebra: unknown point '" + std::to_string(pt.id) + "'");
        if (index >= dim_of(*this, sp)) throw index_error("file algebra jet: section index out of range");
        if (alpha.size() != dim_x_) throw index_error("file algebra jet: bad multi-index size");
        jet_key k;
        k.space = sp.s == section_space::which::V ? -1 : sp.m;
        k.index = index;
        k.point = pt.id;
        k.alpha = alpha;
        const auto it = jets_.find(k);
        return it == jets_.end() ? Rational(0) : it->second;
    }
    bool supports_jets() const override { return has_jets_; }

    point parse_point(const std::string& text) const override {
        try {
            const std::string body = text.front() == '#' ? text.substr(1) : text;
            return point::named(std::stoll(body));
        } catch (const std::exception&) {
            throw parse_error("file algebra point '" + text + "': expected an integer label");
        }
    }
    std::string point_to_string(const point& pt) const override {
        if (pt.k != point::kind::named) throw unsupported_point("file algebra: cannot print this point");
        return "#" + std::to_string(pt.id);
    }

    std::vector<point> sample_points(std::size_t count, std::mt19937_64&) const override {
        std::vector<point> out;
        for (long long id : known_points_) {
            if (out.size() >= count) break;
            out.push_back(point::named(id));
        }
        return out;
    }

  private:
    struct jet_key {
        long space = 0;
        std::size_t index = 0;
        long long point = 0;
        std::vector<unsigned> alpha;
        bool operator<(const jet_key& o) const {
            return std::tie(space, index, point, alpha) < std::tie(o.space, o.index, o.point, o.alpha);
        }
    };

    static std::uint64_t key(long m, std::size_t v, std::size_t w) {
        return (static_cast<std::uint64_t>(m) << 48) | (static_cast<std::uint64_t>(v) << 24) |
               static_cast<std::uint64_t>(w);
    }

    static Rational checked_fraction(long long num, long long den, const std::string& where) {
        if (den <= 0) throw parse_error(where + ": denominators must be positive");
        if (boost::multiprecision::gcd(Integer(num < 0 ? -num : num), Integer(den)) != 1)
            throw parse_error(where + ": fraction " + std::to_string(num) + "/" + std::to_string(den) +
                              " is not in lowest terms");
        return Rational(num, den);
    }

    static std::unique_ptr<file_algebra_system> from_json(const nlohmann::json& j,
                                                          const std::string& raw_text) {
        if (!j.is_object()) throw parse_error("section system file: top level must be an object");
        static const std::set<std::string> known{"name", "dim_x", "m_min", "m_max",
                                                 "dims", "dim_v", "hcv",   "mult", "jets"};
        for (const auto& [k, v] : j.items())
            if (!known.count(k)) throw parse_error("section system file: unknown key '" + k + "'");
        for (const char* req : {"name", "dim_x", "m_min", "m_max", "dims", "dim_v", "hcv", "mult"})
            if (!j.contains(req))
                throw parse_error(std::string("section system file: missing key '") + req + "'");

        auto sys = std::make_unique<file_algebra_system>();
        const std::string label = j.at("name").get<std::string>();
        sys->dim_x_ = j.at("dim_x").get<unsigned>();
        if (sys->dim_x_ == 0 || sys->dim_x_ > 6)
            throw parse_error("section system file: dim_x must be in 1..6");
        const long m_min = j.at("m_min").get<long>();
        if (m_min != 0) throw parse_error("section system file: m_min must be 0 (lower grades vanish)");
        sys->m_max_ = j.at("m_max").get<long>();
        if (sys->m_max_ < 0 || sys->m_max_ > 64)
            throw parse_error("section system file: m_max must be in 0..64");
        sys->dims_ = j.at("dims").get<std::vector<std::size_t>>();
        if (sys->dims_.size() != static_cast<std::size_t>(sys->m_max_ + 1))
            throw parse_error("section system file: dims must list m_max - m_min + 1 grades");
        sys->dim_v_ = j.at("dim_v").get<std::size_t>();
        if (sys->dim_v_ == 0) throw parse_error("section system file: dim_v must be positive");
        sys->hcv_ = j.at("hcv").get<bool>();

        for (const auto& row : j.at("mult")) {
            if (!row.is_array() || row.size() != 6)
                throw parse_error("section system file: mult rows are [m, v, w, out, num, den]");
            const long m = row[0].get<long>();
            const std::size_t v = row[1].get<std::size_t>(), w = row[2].get<std::size_t>(),
                              out = row[3].get<std::size_t>();
            if (m < 0 || m >= sys->m_max_)
                throw parse_error("section system file: mult row at grade " + std::to_string(m) +
                                  " has no tabulated target");
            if (v >= sys->dim_v_ || w >= sys->dim_w(m) || out >= sys->dim_w(m + 1))
                throw parse_error("section system file: mult row index out of range at grade " +
                                  std::to_string(m));
            const Rational val = checked_fraction(row[4].get<long long>(), row[5].get<long long>(),
                                                  "section system file mult");
            if (val == 0) throw parse_error("section system file: mult rows must be nonzero");
            auto& vec = sys->mult_[key(m, v, w)];
            for (const auto& [oi, _] : vec)
                if (oi == out)
                    throw parse_error("section system file: duplicate mult row at grade " +
                                      std::to_string(m));
            vec.emplace_back(static_cast<std::uint32_t>(out), val);
        }
        for (auto& [k, vec] : sys->mult_)
            std::sort(vec.begin(), vec.end(),
                      [](const auto& a, const auto& b) { return a.first < b.first; });

        if (j.contains("jets")) {
            sys->has_jets_ = true;
            for (const auto& row : j.at("jets")) {
                const std::size_t want = 3 + sys->dim_x_ + 2;
                if (!row.is_array() || row.size() != want)
                    throw parse_error("section system file: jets rows are [space, index, point, a_1.." +
                                      std::string("a_n, num, den]"));
                jet_key k;
                k.space = row[0].get<long>();
                k.index = row[1].get<std::size_t>();
                k.point = row[2].get<long long>();
                if (k.space < -1 || k.space > sys->m_max_)
                    throw parse_error("section system file: jets row names an unknown space");
                const std::size_t dim =
                    k.space == -1 ? sys->dim_v_ : sys->dim_w(k.space);
                if (k.index >= dim)
                    throw parse_error("section system file: jets row index out of range");
                for (unsigned i = 0; i < sys->dim_x_; ++i) k.alpha.push_back(row[3 + i].get<unsigned>());
                const Rational val =
                    checked_fraction(row[3 + sys->dim_x_].get<long long>(),
                                     row[4 + sys->dim_x_].get<long long>(), "section system file jets");
                if (sys->jets_.count(k))
                    throw parse_error("section system file: duplicate jets row");
                sys->known_points_.insert(k.point);
                if (val != 0) sys->jets_[k] = val;
            }
        }

        // the hash makes the name safe as a cache key even if two files share a label
        std::uint64_t h = fnv1a64(raw_text.empty() ? j.dump() : raw_text);
        std::ostringstream nm;
        nm << "file(" << label << "#" << std::hex << h << ")";
        sys->name_ = nm.str();
        return sys;
    }

  public:
    file_algebra_system() = default;  // populated by from_json

    // Tabulates any system into the file format: grades 0..m_max, and (when
    // the backend supports jets) coefficients at the given points for all
    // multi-index orders |alpha| < jet_orders.
    static nlohmann::json dump(const graded_section_system& sys, long m_max,
                               const std::vector<point>& jet_points = {}, unsigned jet_orders = 0) {
        nlohmann::json j;
        j["name"] = sys.name();
        j["dim_x"] = sys.dim_x();
        j["m_min"] = 0;
        j["m_max"] = m_max;
        std::vector<std::size_t> dims;
        for (long m = 0; m <= m_max; ++m) dims.push_back(sys.dim_w(m));
        j["dims"] = dims;
        j["dim_v"] = sys.dim_v();
        j["hcv"] = sys.higher_cohomology_vanishes();
        nlohmann::json mult = nlohmann::json::array();
        for (long m = 0; m < m_max; ++m)
            for (std::size_t v = 0; v < sys.dim_v(); ++v)
                for (std::size_t w = 0; w < sys.dim_w(m); ++w)
                    for (const auto& [out, val] : sys.multiply(m, v, w))
                        mult.push_back({m, v, w, out,
                                        static_cast<long long>(numerator(val)),
                                        static_cast<long long>(denominator(val))});
        j["mult"] = std::move(mult);

        if (!jet_points.empty() && jet_orders > 0) {
            nlohmann::json jets = nlohmann::json::array();
            std::vector<section_space> spaces{section_space::v(), section_space::w(0)};
            const auto alphas = multi_indices_below(sys.dim_x(), jet_orders);
            for (long long pid = 0; pid < static_cast<long long>(jet_points.size()); ++pid)
                for (const section_space& sp : spaces)
                    for (std::size_t idx = 0; idx < dim_of(sys, sp); ++idx)
                        for (const auto& alpha : alphas) {
                            const Rational val =
                                sys.jet_coefficient(sp, idx, jet_points[static_cast<std::size_t>(pid)],
                                                    alpha);
                            nlohmann::json row = {sp.s == section_space::which::V ? -1 : sp.m, idx, pid};
                            for (unsigned a : alpha) row.push_back(a);
                            row.push_back(static_cast<long long>(numerator(val)));
                            row.push_back(static_cast<long long>(denominator(val)));
                            jets.push_back(std::move(row));
                        }
            j["jets"] = std::move(jets);
        }
        return j;
    }

  private:
    std::string name_;
    unsigned dim_x_ = 1;
    long m_max_ = 0;
    std::vector<std::size_t> dims_;
    std::size_t dim_v_ = 0;
    bool hcv_ = false;
    std::map<std::uint64_t, sparse_vec> mult_;
    bool has_jets_ = false;
    std::map<jet_key, Rational> jets_;
    std::set<long long> known_points_;
};

}  // namespace syzlab
