#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "syzlab/elliptic.hpp"
#include "syzlab/file_algebra.hpp"
#include "syzlab/projline.hpp"
#include "syzlab/sections.hpp"
#include "syzlab/toric.hpp"

using namespace syzlab;

TEST_CASE("graded multi-indices are complete and graded", "[sections]") {
    const auto idx = multi_indices_below(2, 2);
    REQUIRE(idx.size() == 3);  // C(2+2-1, 2)
    REQUIRE(idx[0] == std::vector<unsigned>{0, 0});
    // all of degree < bound, sorted by total degree
    for (std::size_t i = 1; i < idx.size(); ++i) {
        unsigned da = idx[i - 1][0] + idx[i - 1][1];
        unsigned db = idx[i][0] + idx[i][1];
        REQUIRE(da <= db);
        REQUIRE(db < 2);
    }
    REQUIRE(multi_indices_below(1, 4).size() == 4);
    REQUIRE(multi_indices_below(3, 3).size() == 10);  // C(5,3)
}

TEST_CASE("rational line dimensions and validation", "[sections]") {
    for (long b = 0; b <= 3; ++b)
        for (long d = 1; d <= 4; ++d) {
            projline_system sys(b, d);
            REQUIRE(sys.dim_x() == 1);
            REQUIRE(sys.dim_v() == static_cast<std::size_t>(d + 1));
            for (long m = 0; m <= 3; ++m)
                REQUIRE(sys.dim_w(m) == static_cast<std::size_t>(b + m * d + 1));
            REQUIRE(sys.dim_w(-1) == 0);
            REQUIRE(sys.higher_cohomology_vanishes());
            REQUIRE(sys.genus() == 0);

            const auto rep = validate_system(sys);
            INFO((rep.violations.empty() ? std::string() : rep.violations.front()));
            REQUIRE(rep.ok);
        }
}

TEST_CASE("elliptic dimensions follow Riemann-Roch", "[sections]") {
    elliptic_system sys(Rational(0), Rational(1), 3, 3);  // y^2 = x^3 + 1
    REQUIRE(sys.dim_x() == 1);
    REQUIRE(sys.dim_v() == 3);
    REQUIRE(sys.dim_w(0) == 3);
    REQUIRE(sys.dim_w(1) == 6);
    REQUIRE(sys.dim_w(-1) == 0);
    REQUIRE(sys.genus() == 1);
    REQUIRE(sys.higher_cohomology_vanishes());

    elliptic_system degree_zero(Rational(0), Rational(1), 0, 3);
    REQUIRE(degree_zero.dim_w(0) == 1);  // H^0(O) = constants
    REQUIRE_FALSE(degree_zero.higher_cohomology_vanishes());

    const auto rep = validate_system(sys);
    INFO((rep.violations.empty() ? std::string() : rep.violations.front()));
    REQUIRE(rep.ok);

    REQUIRE_THROWS_AS(elliptic_system(Rational(0), Rational(0), 3, 3), parse_error);
}

TEST_CASE("elliptic multiplication reduces y^2 to the curve equation", "[sections]") {
    // basis by pole order at O: index 0 = 1, index 1 = x, index 2 = y
    elliptic_system sys(Rational(0), Rational(1), 3, 3);
    const sparse_vec prod = sys.multiply(0, 2, 2);  // y * y = x^3 + 1
    REQUIRE(prod.size() == 2);
    // in W_1 (pole orders 0,2,3,4,5,6 -> indices 0..5): constant is 0, x^3 is 5
    REQUIRE(prod[0].first == 0);
    REQUIRE(prod[0].second == Rational(1));
    REQUIRE(prod[1].first == 5);
    REQUIRE(prod[1].second == Rational(1));
}

TEST_CASE("elliptic points parse, print, and live on the curve", "[sections]") {
    elliptic_system sys(Rational(0), Rational(1), 2, 3);
    REQUIRE(sys.point_to_string(sys.parse_point("O")) == "O");
    const point p = sys.parse_point("(0,1)");
    REQUIRE(p.coords[1] == Rational(1));
    REQUIRE_THROWS_AS(sys.parse_point("(1,1)"), parse_error);  // not on the curve

    std::mt19937_64 rng(3);
    const auto pts = sys.sample_points(5, rng);
    REQUIRE(pts.size() >= 5);  // this curve has six rational points
    for (const auto& pt : pts) {
        REQUIRE(pt.k == point::kind::affine);
        const Rational x = pt.coords[0], y = pt.coords[1];
        REQUIRE(y * y == x * x * x + 1);
    }
}

TEST_CASE("toric polytopes, shorthands, and grades", "[sections]") {
    REQUIRE(parse_polytope("simplex:2:1").size() == 3);
    REQUIRE(parse_polytope("simplex:2:2").size() == 6);
    REQUIRE(parse_polytope("box:2:1").size() == 4);
    REQUIRE(parse_polytope("point:2").size() == 1);
    REQUIRE(parse_polytope("0,0;1,0;0,1").size() == 3);
    REQUIRE_THROWS_AS(parse_polytope("simplex:0:1"), parse_error);

    // P^2 with B = O (a point) and L = O(2): W_m has C(2m+2, 2) points
    toric_system sys(parse_polytope("point:2"), parse_polytope("simplex:2:2"));
    REQUIRE(sys.dim_x() == 2);
    REQUIRE(sys.dim_v() == 6);
    REQUIRE(sys.dim_w(0) == 1);
    REQUIRE(sys.dim_w(1) == 6);
    REQUIRE(sys.dim_w(2) == 15);
    REQUIRE(sys.higher_cohomology_vanishes());
    REQUIRE_FALSE(sys.genus().has_value());

    const auto rep = validate_system(sys);
    INFO((rep.violations.empty() ? std::string() : rep.violations.front()));
    REQUIRE(rep.ok);

    // multiplication is the indicator of lattice-point addition
    const sparse_vec prod = sys.multiply(0, 1, 0);
    REQUIRE(prod.size() == 1);
    REQUIRE(prod[0].second == Rational(1));
}

TEST_CASE("toric systems of mixed dimension are rejected", "[sections]") {
    REQUIRE_THROWS_AS(toric_system(parse_polytope("point:1"), parse_polytope("simplex:2:1")),
                      parse_error);
}

TEST_CASE("file-backed algebras round trip the built-in backends", "[sections]") {
    projline_system original(1, 2);
    std::vector<point> jet_pts{original.parse_point("0"), original.parse_point("1"),
                               original.parse_point("inf")};
    const auto j = file_algebra_system::dump(original, 3, jet_pts, 3);
    const auto loaded = file_algebra_system::from_json_text(j.dump());

    REQUIRE(loaded->dim_v() == original.dim_v());
    for (long m = 0; m <= 2; ++m) REQUIRE(loaded->dim_w(m) == original.dim_w(m));
    REQUIRE(loaded->higher_cohomology_vanishes() == original.higher_cohomology_vanishes());
    REQUIRE(loaded->name().rfind("file(", 0) == 0);

    for (long m = 0; m < 2; ++m)
        for (std::size_t v = 0; v < original.dim_v(); ++v)
            for (std::size_t w = 0; w < original.dim_w(m); ++w) {
                const auto a = original.multiply(m, v, w);
                const auto b = loaded->multiply(m, v, w);
                REQUIRE(a == b);
            }

    // jets at the recorded points agree with the original
    REQUIRE(loaded->supports_jets());
    const auto alphas = multi_indices_below(1, 3);
    for (long long pid = 0; pid < 3; ++pid)
        for (std::size_t idx = 0; idx < original.dim_w(0); ++idx)
            for (const auto& alpha : alphas) {
                const Rational a =
                    original.jet_coefficient(section_space::w(0), idx, jet_pts[pid], alpha);
                const Rational b = loaded->jet_coefficient(section_space::w(0), idx,
                                                           point::named(pid), alpha);
                REQUIRE(a == b);
            }

    const auto rep = validate_system(*loaded);
    INFO((rep.violations.empty() ? std::string() : rep.violations.front()));
    REQUIRE(rep.ok);
}

TEST_CASE("file algebras reject malformed input", "[sections]") {
    const std::string good = file_algebra_system::dump(projline_system(0, 1), 1).dump();
    REQUIRE_NOTHROW(file_algebra_system::from_json_text(good));

    REQUIRE_THROWS_AS(file_algebra_system::from_json_text("not json"), parse_error);
    REQUIRE_THROWS_AS(file_algebra_system::from_json_text("[1,2,3]"), parse_error);

    auto j = nlohmann::json::parse(good);
    j["surprise"] = 1;
    REQUIRE_THROWS_AS(file_algebra_system::from_json_text(j.dump()), parse_error);

    j = nlohmann::json::parse(good);
    j["mult"][0][4] = 2;  // 2/2: no longer reduced
    j["mult"][0][5] = 2;
    REQUIRE_THROWS_AS(file_algebra_system::from_json_text(j.dump()), parse_error);

    j = nlohmann::json::parse(good);
    j["mult"].push_back(j["mult"][0]);  // duplicate row
    REQUIRE_THROWS_AS(file_algebra_system::from_json_text(j.dump()), parse_error);

    j = nlohmann::json::parse(good);
    j["dim_x"] = 9;  // out of the supported range
    REQUIRE_THROWS_AS(file_algebra_system::from_json_text(j.dump()), parse_error);
}

TEST_CASE("validation catches a corrupted multiplication table", "[sections]") {
    auto j = file_algebra_system::dump(projline_system(0, 2), 2);
    // break commutativity: t^0 * (v=1) vs t^0 * (v=2) after tampering
    for (auto& row : j["mult"]) {
        if (row[0] == 0 && row[1] == 1 && row[2] == 0) {
            row[3] = 0;  // wrong output index
            break;
        }
    }
    const auto loaded = file_algebra_system::from_json_text(j.dump());
    validation_options shallow;
    shallow.m_max = 0;  // the file tabulates products for m < 2 only
    const auto rep = validate_system(*loaded, shallow);
    REQUIRE_FALSE(rep.ok);
    REQUIRE_FALSE(rep.violations.empty());
    REQUIRE(rep.violations.front().find("m=") != std::string::npos);
}

TEST_CASE("rebasing preserves the backend family", "[sections]") {
    projline_system sys(0, 3);
    const auto moved = sys.rebased(2, 4);
    REQUIRE(moved->dim_v() == 5);
    REQUIRE(moved->dim_w(0) == 3);

    toric_system t(parse_polytope("point:2"), parse_polytope("simplex:2:1"));
    REQUIRE_THROWS_AS(t.rebased(0, 2), unsupported_backend);
}

TEST_CASE("zero cycles: degree, reducedness, parsing helpers", "[sections]") {
    projline_system sys(2, 2);
    zero_cycle z{{sys.parse_point("0"), 2}, {sys.parse_point("1"), 1}};
    REQUIRE(cycle_degree(z) == 3);
    REQUIRE_FALSE(cycle_is_reduced(z));
    zero_cycle r{{sys.parse_point("0"), 1}, {sys.parse_point("inf"), 1}};
    REQUIRE(cycle_is_reduced(r));
}
