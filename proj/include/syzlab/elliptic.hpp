#pragma once

/*
 * A smooth plane cubic  y^2 = x^3 + A x + C  (4A^3 + 27C^2 != 0) with the
 * point at infinity O as origin, B = O(b.O), L = O(d.O), d >= 1.
 *
 * H^0(e.O) has the classical monomial basis  { x^i y^j : 2i + 3j <= e, j <= 1 },
 * ordered by pole order at O (the constant first, then x, y, x^2, xy, ...).
 * Pole orders are distinct (order 1 never occurs), so the order determines
 * the index:  0 -> 0  and  o -> o - 1  for o >= 2.
 *
 * Jets use the local coordinate t = x - x0 at affine points with y0 != 0,
 * expanding y as a power series via the curve equation.  Points with y0 = 0
 * and the origin support plain evaluation (order 0) only: at O the
 * trivialized value of a section is the coefficient of its top-order pole.
 *
 * The rational group law (chord and tangent) is exposed for constructing
 * cycles with prescribed sums.
 */

#include <algorithm>
#include <memory>
#include <string>
#include <vector>

#include "sections.hpp"

namespace syzlab {

class elliptic_system final : public graded_section_system {
  public:
    elliptic_system(Rational A, Rational C, long b, long d) : A_(A), C_(C), b_(b), d_(d) {
        if (d < 1) throw parse_error("elliptic: need d >= 1, got d = " + std::to_string(d));
        if (4 * A * A * A + 27 * C * C == 0)
            throw parse_error("elliptic: 4A^3 + 27C^2 = 0 describes a singular cubic");
    }

    std::string name() const override {
        return "elliptic(A=" + rational_to_string(A_) + ",C=" + rational_to_string(C_) +
               ",b=" + std::to_string(b_) + ",d=" + std::to_string(d_) + ")";
    }
    unsigned dim_x() const override { return 1; }

    static std::size_t dim_of_degree(long e) {
        if (e < 0) return 0;
        if (e == 0) return 1;
        return static_cast<std::size_t>(e);
    }
    std::size_t dim_v() const override { return dim_of_degree(d_); }
    std::size_t dim_w(long m) const override { return m < 0 ? 0 : dim_of_degree(b_ + m * d_); }

    bool higher_cohomology_vanishes() const override { return b_ >= 1; }

    // basis element of index k in H^0(e.O) as exponents (i, j)
    static std::pair<unsigned, unsigned> monomial_of_index(std::size_t k, long e) {
        const long o = k == 0 ? 0 : static_cast<long>(k) + 1;  // pole order
        if (o > e || o == 1) throw index_error("elliptic: no basis monomial of order " + std::to_string(o));
        const unsigned j = o % 2 == 0 ? 0 : 1;
        return {static_cast<unsigned>((o - 3 * j) / 2), j};
    }
    static std::size_t index_of_order(long o) { return o == 0 ? 0 : static_cast<std::size_t>(o - 1); }

    sparse_vec multiply(long m, std::size_t v, std::size_t w) const override {
        if (m < 0 || v >= dim_v() || w >= dim_w(m)) throw index_error("elliptic multiply out of range");
        const auto [i1, j1] = monomial_of_index(v, d_);
        const auto [i2, j2] = monomial_of_index(w, b_ + m * d_);
        const unsigned i = i1 + i2;
        sparse_vec out;
        if (j1 + j2 <= 1) {
            out.emplace_back(static_cast<std::uint32_t>(index_of_order(2L * i + 3L * (j1 + j2))),
                             Rational(1));
        } else {
            // y^2 = x^3 + A x + C
            if (C_ != 0) out.emplace_back(static_cast<std::uint32_t>(index_of_order(2L * i)), C_);
            if (A_ != 0) out.emplace_back(static_cast<std::uint32_t>(index_of_order(2L * (i + 1))), A_);
            out.emplace_back(static_cast<std::uint32_t>(index_of_order(2L * (i + 3))), Rational(1));
        }
        return out;
    }

    bool on_curve(const point& pt) const {
        if (pt.k == point::kind::infinity) return true;
        if (pt.k != point::kind::affine || pt.coords.size() != 2) return false;
        const Rational &x = pt.coords[0], &y = pt.coords[1];
        return y * y == x * x * x + A_ * x + C_;
    }

    Rational jet_coefficient(const section_space& sp, std::size_t index, const point& pt,
                             const std::vector<unsigned>& alpha) const override {
        const long e = degree_of(sp);
        if (index >= dim_of(*this, sp)) throw index_error("elliptic jet: section index out of range");
        if (alpha.size() != 1) throw index_error("elliptic jet: multi-index must have 1 entry");
        const unsigned a = alpha[0];
        const auto [i, j] = monomial_of_index(index, e);

        if (pt.k == point::kind::infinity) {
            if (a != 0)
                throw unsupported_point("elliptic: only plain evaluation is available at the origin");
            // trivialized value at O: x^i y^j ~ (-1)^j t^{-(2i+3j)}
            if (2L * i + 3L * j != e) return Rational(0);
            return j % 2 == 0 ? Rational(1) : Rational(-1);
        }
        if (pt.k != point::kind::affine || pt.coords.size() != 2)
            throw unsupported_point("elliptic: points are (x,y) pairs or 'O'");
        if (!on_curve(pt)) throw unsupported_point("elliptic: point is not on the curve");

        const Rational &x0 = pt.coords[0], &y0 = pt.coords[1];
        if (a == 0) {
            Rational v(1);
            for (unsigned k = 0; k < i; ++k) v *= x0;
            if (j) v *= y0;
            return v;
        }
        if (y0 == 0)
            throw unsupported_point(
                "elliptic: x - x0 is not a local coordinate where y = 0; only evaluation works there");

        // power series in t = x - x0 up to order a
        const std::size_t n = a + 1;
        std::vector<Rational> y_ser(n, Rational(0));
        y_ser[0] = y0;
        for (std::size_t r = 1; r < n; ++r) {
            Rational c(0);
            if (r == 1) c = 3 * x0 * x0 + A_;
            else if (r == 2) c = 3 * x0;
            else if (r == 3) c = 1;
            for (std::size_t s = 1; s < r; ++s) c -= y_ser[s] * y_ser[r - s];
            y_ser[r] = c / (2 * y0);
        }
        // (x0 + t)^i
        std::vector<Rational> ser(n, Rational(0));
        for (std::size_t k = 0; k < n && k <= i; ++k) {
            Rational p(binomial(i, static_cast<unsigned>(k)));
            for (unsigned q = 0; q < i - k; ++q) p *= x0;
            ser[k] = p;
        }
        if (j) {
            std::vector<Rational> prod(n, Rational(0));
            for (std::size_t s = 0; s < n; ++s)
                for (std::size_t t = 0; s + t < n; ++t) prod[s + t] += ser[s] * y_ser[t];
            ser = std::move(prod);
        }
        return ser[a];
    }

    point parse_point(const std::string& text) const override {
        if (text == "O" || text == "inf" || text == "infinity") return point::at_infinity();
        std::string body = text;
        if (body.size() >= 2 && body.front() == '(' && body.back() == ')')
            body = body.substr(1, body.size() - 2);
        const auto comma = body.find(',');
        if (comma == std::string::npos)
            throw parse_error("elliptic point '" + text + "': expected (x,y) or 'O'");
        point pt = point::affine(
            {parse_rational(body.substr(0, comma)), parse_rational(body.substr(comma + 1))});
        if (!on_curve(pt)) throw parse_error("elliptic point '" + text + "' is not on the curve");
        return pt;
    }
    std::string point_to_string(const point& pt) const override {
        if (pt.k == point::kind::infinity) return "O";
        if (pt.k != point::kind::affine || pt.coords.size() != 2)
            throw unsupported_point("elliptic: cannot print this point");
        return "(" + rational_to_string(pt.coords[0]) + "," + rational_to_string(pt.coords[1]) + ")";
    }

    // Rational points found by scanning small x values for square right-hand
    // sides; may return fewer than requested (rational points can be scarce).
    std::vector<point> sample_points(std::size_t count, std::mt19937_64& rng) const override {
        std::vector<point> out;
        auto push = [&](const Rational& x, const Rational& y) {
            point pt = point::affine({x, y});
            if (std::find(out.begin(), out.end(), pt) == out.end()) out.push_back(pt);
        };
        auto try_x = [&](const Rational& x) {
            const Rational rhs = x * x * x + A_ * x + C_;
            if (rhs < 0) return;
            Rational root;
            if (!rational_sqrt(rhs, root)) return;
            push(x, root);
            if (root != 0) push(x, -root);
        };
        for (long num = 0; num <= 40 && out.size() < count; ++num)
            for (long den = 1; den <= 3 && out.size() < count; ++den) {
                try_x(Rational(num, den));
                try_x(Rational(-num, den));
            }
        while (out.size() < count) {
            const long num = static_cast<long>(rng() % 2001) - 1000;
            const long den = 1 + static_cast<long>(rng() % 6);
            const std::size_t before = out.size();
            try_x(Rational(num, den));
            if (out.size() == before && num > 900) break;  // give up quietly
        }
        if (out.size() > count) out.resize(count);
        return out;
    }

    std::optional<long> genus() const override { return 1; }
    std::optional<std::pair<long, long>> line_bundle_degrees() const override { return {{b_, d_}}; }
    std::unique_ptr<graded_section_system> rebased(long new_b, long new_d) const override {
        return std::make_unique<elliptic_system>(A_, C_, new_b, new_d);
    }

    // degree b on a genus-1 curve separates length-(p+1) subschemes exactly
    // when b >= p + 2, except that the trivial bundle does separate single
    // points (its one section vanishes nowhere).
    std::optional<bool> jet_very_ample_closed_form(unsigned p) const override {
        if (b_ == 0 && p == 0) return true;
        return b_ >= static_cast<long>(p) + 2;
    }

    // For b <= p any p+1 distinct rational points already have too few
    // sections to separate them.  In the boundary case b = p + 1 a cycle is
    // dependent exactly when its group-law sum vanishes, so candidates are
    // built as p pool points completed by the negative of their sum.
    std::optional<zero_cycle> propose_violating_cycle(unsigned p, std::mt19937_64& rng,
                                                      std::size_t /*attempt*/) const override {
        if (b_ == 0 && p == 0) return std::nullopt;                 // genuinely 0-jet very ample
        if (b_ >= static_cast<long>(p) + 2) return std::nullopt;    // genuinely p-jet very ample
        std::vector<point> pool = sample_points(std::max<std::size_t>(p + 3, 8), rng);
        if (b_ <= static_cast<long>(p)) {
            if (pool.size() < p + 1) return std::nullopt;
            std::shuffle(pool.begin(), pool.end(), rng);
            zero_cycle z;
            for (unsigned i = 0; i <= p; ++i) z.push_back({pool[i], 1});
            return z;
        }
        // b == p + 1
        if (pool.size() < p) return std::nullopt;
        std::shuffle(pool.begin(), pool.end(), rng);
        point sum = point::at_infinity();
        zero_cycle z;
        for (unsigned i = 0; i < p; ++i) {
            z.push_back({pool[i], 1});
            sum = group_add(sum, pool[i]);
        }
        const point last = group_neg(sum);
        for (const auto& part : z)
            if (part.pt == last) return std::nullopt;  // collision: caller retries
        z.push_back({last, 1});
        return z;
    }

    // ---- group law -------------------------------------------------------

    point group_neg(const point& p) const {
        if (p.k == point::kind::infinity) return p;
        return point::affine({p.coords[0], -p.coords[1]});
    }

    point group_add(const point& p, const point& q) const {
        if (p.k == point::kind::infinity) return q;
        if (q.k == point::kind::infinity) return p;
        const Rational &x1 = p.coords[0], &y1 = p.coords[1];
        const Rational &x2 = q.coords[0], &y2 = q.coords[1];
        Rational lam;
        if (x1 == x2) {
            if (y1 == -y2) return point::at_infinity();
            lam = (3 * x1 * x1 + A_) / (2 * y1);
        } else {
            lam = (y2 - y1) / (x2 - x1);
        }
        const Rational x3 = lam * lam - x1 - x2;
        const Rational y3 = lam * (x1 - x3) - y1;
        return point::affine({x3, y3});
    }

    long b() const { return b_; }
    long d() const { return d_; }
    const Rational& curve_a() const { return A_; }
    const Rational& curve_c() const { return C_; }

  private:
    static bool rational_sqrt(const Rational& r, Rational& out) {
        const Integer num = numerator(r), den = denominator(r);
        const Integer sn = boost::multiprecision::sqrt(num), sd = boost::multiprecision::sqrt(den);
        if (sn * sn != num || sd * sd != den) return false;
        out = Rational(sn) / Rational(sd);
        return true;
    }

    long degree_of(const section_space& sp) const {
        return sp.s == section_space::which::V ? d_ : b_ + sp.m * d_;
    }

    Rational A_, C_;
    long b_, d_;
};

}  // namespace syzlab
