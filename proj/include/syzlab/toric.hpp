#pragma once

/*
 * Torus-monomial section systems.
 *
 * B and L are described by finite sets of lattice points (their sections are
 * the corresponding Laurent monomials).  Grade m is built multiplicatively:
 *
 *   S_0 = pts(B),   S_{m+1} = { s + v : s in S_m, v in pts(L) }  (deduplicated)
 *
 * which is exactly the image of the multiplication maps, so the module is
 * generated in grade zero by construction.  For the polytopes offered by the
 * shorthand notation (simplices, boxes, points) these sets agree with the
 * lattice points of P_B + m P_L.  All bases are sorted lexicographically.
 *
 * Multiplication of monomials is the indicator of the exponent sum, jets at
 * torus points (all coordinates nonzero) are products of one-variable
 * binomial rows; no higher cohomology ever enters (nef bundles on projective
 * toric varieties have none, and the grading is the user's description of
 * such a situation).
 */

#include <algorithm>
#include <deque>
#include <memory>
#include <mutex>
#include <sstream>
#include <string>
#include <vector>

#include "sections.hpp"

namespace syzlab {

using lattice_point = std::vector<long>;
using lattice_set = std::vector<lattice_point>;  // sorted + deduplicated

inline lattice_set normalize_lattice_set(lattice_set pts) {
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

// "simplex:<n>:<k>", "box:<n>:<k>", "point:<n>", or a raw list "1,0;0,1;2,2"
inline lattice_set parse_polytope(const std::string& text) {
    auto split = [](const std::string& s, char sep) {
        std::vector<std::string> out;
        std::string cur;
        for (char c : s) {
            if (c == sep) {
                out.push_back(cur);
                cur.clear();
            } else
                cur += c;
        }
        out.push_back(cur);
        return out;
    };
    try {
        if (text.rfind("simplex:", 0) == 0 || text.rfind("box:", 0) == 0) {
            const bool simplex = text[0] == 's';
            const auto parts = split(text, ':');
            if (parts.size() != 3) throw parse_error("");
            const long n = std::stol(parts[1]), k = std::stol(parts[2]);
            if (n < 1 || n > 6 || k < 0 || k > 60) throw parse_error("");
            lattice_set pts;
            lattice_point cur(n, 0);
            // enumerate {0..k}^n, keeping |u| <= k for the simplex
            while (true) {
                long total = 0;
                for (long c : cur) total += c;
                if (!simplex || total <= k) pts.push_back(cur);
                int pos = static_cast<int>(n) - 1;
                while (pos >= 0 && cur[pos] == k) cur[pos--] = 0;
                if (pos < 0) break;
                ++cur[pos];
            }
            return normalize_lattice_set(std::move(pts));
        }
        if (text.rfind("point:", 0) == 0) {
            const long n = std::stol(text.substr(6));
            if (n < 1 || n > 6) throw parse_error("");
            return {lattice_point(n, 0)};
        }
        lattice_set pts;
        for (const std::string& chunk : split(text, ';')) {
            lattice_point u;
            for (const std::string& c : split(chunk, ',')) u.push_back(std::stol(c));
            pts.push_back(std::move(u));
        }
        if (pts.empty()) throw parse_error("");
        for (const auto& u : pts)
            if (u.size() != pts.front().size()) throw parse_error("");
        return normalize_lattice_set(std::move(pts));
    } catch (const parse_error&) {
        throw parse_error("cannot read polytope '" + text +
                          "' (use simplex:<n>:<k>, box:<n>:<k>, point:<n>, or 'x,y;x,y;...')");
    } catch (const std::exception&) {
        throw parse_error("cannot read polytope '" + text +
                          "' (use simplex:<n>:<k>, box:<n>:<k>, point:<n>, or 'x,y;x,y;...')");
    }
}

class toric_system final : public graded_section_system {
  public:
    toric_system(lattice_set b_pts, lattice_set l_pts)
        : b_pts_(normalize_lattice_set(std::move(b_pts))),
          l_pts_(normalize_lattice_set(std::move(l_pts))) {
        if (b_pts_.empty() || l_pts_.empty())
            throw parse_error("toric: both point sets must be nonempty");
        n_ = static_cast<unsigned>(l_pts_.front().size());
        for (const auto& u : b_pts_)
            if (u.size() != n_) throw parse_error("toric: B and L points must share one dimension");
        grades_.push_back(b_pts_);
    }

    std::string name() const override {
        std::ostringstream os;
        os << "toric(B=" << render(b_pts_) << ";L=" << render(l_pts_) << ")";
        return os.str();
    }
    unsigned dim_x() const override { return n_; }

    std::size_t dim_v() const override { return l_pts_.size(); }
    std::size_t dim_w(long m) const override { return m < 0 ? 0 : grade(m).size(); }

    bool higher_cohomology_vanishes() const override { return true; }

    sparse_vec multiply(long m, std::size_t v, std::size_t w) const override {
        const lattice_set& src = grade(m);
        const lattice_set& dst = grade(m + 1);
        if (v >= l_pts_.size() || w >= src.size()) throw index_error("toric multiply out of range");
        lattice_point u = src[w];
        for (unsigned i = 0; i < n_; ++i) u[i] += l_pts_[v][i];
        const auto it = std::lower_bound(dst.begin(), dst.end(), u);
        if (it == dst.end() || *it != u) throw error("internal: toric product left its grade");
        return {{static_cast<std::uint32_t>(it - dst.begin()), Rational(1)}};
    }

    Rational jet_coefficient(const section_space& sp, std::size_t index, const point& pt,
                             const std::vector<unsigned>& alpha) const override {
        const lattice_set& basis = sp.s == section_space::which::V ? l_pts_ : grade(sp.m);
        if (index >= basis.size()) throw index_error("toric jet: section index out of range");
        if (alpha.size() != n_) throw index_error("toric jet: multi-index needs " + std::to_string(n_) +
                                                  " entries");
        if (pt.k != point::kind::affine || pt.coords.size() != n_)
            throw unsupported_point("toric: points are torus points with " + std::to_string(n_) +
                                    " nonzero coordinates");
        for (const Rational& c : pt.coords)
            if (c == 0) throw unsupported_point("toric: torus points have nonzero coordinates");
        // d^alpha (xi^u) / alpha!  =  prod_i  C(u_i, a_i) xi_i^{u_i - a_i}
        Rational out(1);
        const lattice_point& u = basis[index];
        for (unsigned i = 0; i < n_; ++i) {
            out *= generalized_binomial(u[i], alpha[i]);
            if (out == 0) return out;
            const long exp = u[i] - static_cast<long>(alpha[i]);
            Rational p(1);
            for (long k = 0; k < std::abs(exp); ++k) p *= pt.coords[i];
            out *= exp >= 0 ? p : 1 / p;
        }
        return out;
    }

    point parse_point(const std::string& text) const override {
        std::vector<Rational> coords;
        std::string cur;
        std::string body = text;
        if (body.size() >= 2 && body.front() == '(' && body.back() == ')')
            body = body.substr(1, body.size() - 2);
        for (char c : body + ",") {
            if (c == ',') {
                coords.push_back(parse_rational(cur));
                cur.clear();
            } else
                cur += c;
        }
        if (coords.size() != n_)
            throw parse_error("toric point '" + text + "': expected " + std::to_string(n_) +
                              " coordinates");
        point pt = point::affine(std::move(coords));
        for (const Rational& c : pt.coords)
            if (c == 0) throw parse_error("toric point '" + text + "': coordinates must be nonzero");
        return pt;
    }
    std::string point_to_string(const point& pt) const override {
        if (pt.k != point::kind::affine || pt.coords.size() != n_)
            throw unsupported_point("toric: cannot print this point");
        std::string out;
        for (std::size_t i = 0; i < pt.coords.size(); ++i)
            out += (i ? "," : "") + rational_to_string(pt.coords[i]);
        return out;
    }

    std::vector<point> sample_points(std::size_t count, std::mt19937_64& rng) const override {
        std::vector<point> out;
        while (out.size() < count) {
            std::vector<Rational> coords;
            for (unsigned i = 0; i < n_; ++i) {
                long num = static_cast<long>(rng() % 19) - 9;
                if (num == 0) num = 10;
                const long den = 1 + static_cast<long>(rng() % 3);
                coords.emplace_back(num, den);
            }
            point pt = point::affine(std::move(coords));
            if (std::find(out.begin(), out.end(), pt) == out.end()) out.push_back(std::move(pt));
        }
        return out;
    }

    const lattice_set& grade(long m) const {
        if (m < 0) throw index_error("toric: negative grade requested");
        std::lock_guard<std::mutex> lock(mu_);
        while (static_cast<long>(grades_.size()) <= m) {
            const lattice_set& prev = grades_.back();
            lattice_set next;
            next.reserve(prev.size() * l_pts_.size());
            for (const auto& s : prev)
                for (const auto& v : l_pts_) {
                    lattice_point u = s;
                    for (unsigned i = 0; i < n_; ++i) u[i] += v[i];
                    next.push_back(std::move(u));
                }
            grades_.push_back(normalize_lattice_set(std::move(next)));
        }
        return grades_[static_cast<std::size_t>(m)];
    }

  private:
    static std::string render(const lattice_set& pts) {
        std::string out;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            if (i) out += ";";
            for (std::size_t j = 0; j < pts[i].size(); ++j)
                out += (j ? "," : "") + std::to_string(pts[i][j]);
        }
        return out;
    }

    lattice_set b_pts_, l_pts_;
    unsigned n_ = 0;
    mutable std::mutex mu_;
    // deque: growing it never moves existing grades, so returned references stay valid
    mutable std::deque<lattice_set> grades_;
};

}  // namespace syzlab
