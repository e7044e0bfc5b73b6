#pragma once

/*
 * The projective line with B = O(b), L = O(d), d >= 1.
 *
 * Sections of O(e) are polynomials of degree <= e in the affine coordinate t;
 * the basis of every space is 1, t, ..., t^e.  Jets are supported everywhere:
 * at an affine point t0 the local coordinate is (t - t0); at infinity the
 * chart is u = 1/t, where t^k trivializes to u^{e-k}.
 *
 * b may be any integer (negative twists make perfect sense and are needed
 * when pairing a table against its canonical-twist partner); grades with
 * b + m d < 0 are zero.
 */

#include <algorithm>
#include <memory>
#include <string>
#include <vector>

#include "sections.hpp"

namespace syzlab {

class projline_system final : public graded_section_system {
  public:
    projline_system(long b, long d) : b_(b), d_(d) {
        if (d < 1) throw parse_error("projline: need d >= 1, got d = " + std::to_string(d));
    }

    std::string name() const override {
        return "projline(b=" + std::to_string(b_) + ",d=" + std::to_string(d_) + ")";
    }
    unsigned dim_x() const override { return 1; }

    std::size_t dim_v() const override { return static_cast<std::size_t>(d_ + 1); }
    std::size_t dim_w(long m) const override {
        if (m < 0) return 0;
        const long e = b_ + m * d_;
        return e < 0 ? 0 : static_cast<std::size_t>(e + 1);
    }

    bool higher_cohomology_vanishes() const override { return b_ >= -1; }

    sparse_vec multiply(long m, std::size_t v, std::size_t w) const override {
        // t^v * t^w = t^{v+w}
        if (m < 0 || v >= dim_v() || w >= dim_w(m)) throw index_error("projline multiply out of range");
        return {{static_cast<std::uint32_t>(v + w), Rational(1)}};
    }

    Rational jet_coefficient(const section_space& sp, std::size_t index, const point& pt,
                             const std::vector<unsigned>& alpha) const override {
        const long e = degree_of(sp);
        if (index >= dim_of(*this, sp)) throw index_error("projline jet: section index out of range");
        if (alpha.size() != 1) throw index_error("projline jet: multi-index must have 1 entry");
        const unsigned a = alpha[0];
        const long k = static_cast<long>(index);
        if (pt.k == point::kind::infinity) {
            // t^k = u^{e-k} in the chart u = 1/t
            return e - k == static_cast<long>(a) ? Rational(1) : Rational(0);
        }
        if (pt.k != point::kind::affine || pt.coords.size() != 1)
            throw unsupported_point("projline: points are affine rationals or 'inf'");
        // coefficient of (t - t0)^a in t^k
        if (static_cast<long>(a) > k) return Rational(0);
        Rational c(binomial(static_cast<unsigned>(k), a));
        const Rational& t0 = pt.coords[0];
        Rational p(1);
        for (long i = 0; i < k - static_cast<long>(a); ++i) p *= t0;
        return c * p;
    }

    point parse_point(const std::string& text) const override {
        if (text == "inf" || text == "infinity") return point::at_infinity();
        return point::affine({parse_rational(text)});
    }
    std::string point_to_string(const point& pt) const override {
        if (pt.k == point::kind::infinity) return "inf";
        if (pt.k != point::kind::affine || pt.coords.size() != 1)
            throw unsupported_point("projline: cannot print this point");
        return rational_to_string(pt.coords[0]);
    }

    std::vector<point> sample_points(std::size_t count, std::mt19937_64& rng) const override {
        std::vector<point> out;
        std::vector<Rational> seen;
        while (out.size() < count) {
            const long num = static_cast<long>(rng() % 41) - 20;
            const long den = 1 + static_cast<long>(rng() % 4);
            Rational t(num, den);
            if (std::find(seen.begin(), seen.end(), t) != seen.end()) continue;
            seen.push_back(t);
            out.push_back(point::affine({t}));
        }
        return out;
    }

    std::optional<long> genus() const override { return 0; }
    std::optional<std::pair<long, long>> line_bundle_degrees() const override { return {{b_, d_}}; }
    std::unique_ptr<graded_section_system> rebased(long new_b, long new_d) const override {
        return std::make_unique<projline_system>(new_b, new_d);
    }

    // O(b) separates length-(p+1) subschemes exactly when b >= p.
    std::optional<bool> jet_very_ample_closed_form(unsigned p) const override {
        return b_ >= static_cast<long>(p);
    }

    // When b < p, any p+1 distinct points overwhelm the b+1 sections, so the
    // first p+1 integers are already a witness.
    std::optional<zero_cycle> propose_violating_cycle(unsigned p, std::mt19937_64&,
                                                      std::size_t attempt) const override {
        if (attempt > 0 || b_ >= static_cast<long>(p)) return std::nullopt;
        zero_cycle z;
        for (unsigned t = 0; t <= p; ++t) z.push_back({point::affine({Rational(t)}), 1});
        return z;
    }

    long b() const { return b_; }
    long d() const { return d_; }

  private:
    long degree_of(const section_space& sp) const {
        return sp.s == section_space::which::V ? d_ : b_ + sp.m * d_;
    }

    long b_, d_;
};

}  // namespace syzlab
