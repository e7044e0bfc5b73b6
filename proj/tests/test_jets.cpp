#include <catch2/catch_amalgamated.hpp>

#include "syzlab/elliptic.hpp"
#include "syzlab/jets.hpp"
#include "syzlab/projline.hpp"
#include "syzlab/toric.hpp"

using namespace syzlab;

TEST_CASE("cycle literals parse and print", "[jets]") {
    projline_system sys(2, 2);
    const zero_cycle z = parse_cycle(sys, "0 + 1 + 2");
    REQUIRE(z.size() == 3);
    REQUIRE(cycle_degree(z) == 3);

    const zero_cycle fat = parse_cycle(sys, "0^3");
    REQUIRE(fat.size() == 1);
    REQUIRE(fat[0].mult == 3);

    const zero_cycle mixed = parse_cycle(sys, "inf^2 + 1/2");
    REQUIRE(cycle_degree(mixed) == 3);
    const zero_cycle back = parse_cycle(sys, cycle_to_string(sys, mixed));
    REQUIRE(back == mixed);

    REQUIRE_THROWS_AS(parse_cycle(sys, "0^0"), parse_error);
    REQUIRE_THROWS_AS(parse_cycle(sys, ""), parse_error);
}

TEST_CASE("jet matrices reproduce the Vandermonde pattern", "[jets]") {
    // three distinct points against H^0(O(2)): full rank 3
    projline_system quad(2, 2);
    const zero_cycle pts = parse_cycle(quad, "0 + 1 + 2");
    const conditions_result full = imposes_independent_conditions(quad, section_space::w(0), pts);
    REQUIRE(full.target == 3);
    REQUIRE(full.rank == 3);
    REQUIRE(full.independent);

    // the same three points against H^0(O(1)): rank sticks at 2
    projline_system line(1, 2);
    const conditions_result thin = imposes_independent_conditions(line, section_space::w(0), pts);
    REQUIRE(thin.target == 3);
    REQUIRE(thin.rank == 2);
    REQUIRE_FALSE(thin.independent);
}

TEST_CASE("a full jet at one point spans exactly when the degree allows", "[jets]") {
    projline_system quad(2, 2);
    const conditions_result ok =
        imposes_independent_conditions(quad, section_space::w(0), parse_cycle(quad, "0^3"));
    REQUIRE(ok.rank == 3);
    REQUIRE(ok.independent);

    projline_system line(1, 2);
    const conditions_result no =
        imposes_independent_conditions(line, section_space::w(0), parse_cycle(line, "0^3"));
    REQUIRE(no.rank == 2);
    REQUIRE_FALSE(no.independent);

    // the infinity chart participates like any other point
    const conditions_result inf_ok =
        imposes_independent_conditions(quad, section_space::w(0), parse_cycle(quad, "inf + 0 + 1"));
    REQUIRE(inf_ok.independent);
}

TEST_CASE("closed forms decide jet very ampleness on the rational line", "[jets]") {
    for (long b = 0; b <= 4; ++b)
        for (unsigned p = 0; p <= 4; ++p) {
            projline_system sys(b, 3);
            const jva_result res = test_jet_very_ample(sys, p);
            INFO("b=" << b << " p=" << p);
            REQUIRE((res.v == jva_result::verdict::yes) == (b >= static_cast<long>(p)));
            if (res.v == jva_result::verdict::yes) REQUIRE(res.via_closed_form);
        }
}

TEST_CASE("closed forms decide jet very ampleness on genus one", "[jets]") {
    for (long b = 0; b <= 4; ++b)
        for (unsigned p = 0; p <= 2; ++p) {
            elliptic_system sys(Rational(0), Rational(1), b, 3);
            const jva_result res = test_jet_very_ample(sys, p);
            INFO("b=" << b << " p=" << p);
            const bool expect = (b == 0 && p == 0) || b >= static_cast<long>(p) + 2;
            REQUIRE((res.v == jva_result::verdict::yes) == expect);
        }
}

TEST_CASE("witness search produces verified violating cycles", "[jets]") {
    jva_options opt;
    opt.allow_closed_form = false;
    opt.seed = 5;

    {
        projline_system sys(1, 3);  // b = 1 < p = 2
        const jva_result res = test_jet_very_ample(sys, 2, opt);
        REQUIRE(res.v == jva_result::verdict::no);
        REQUIRE(res.witness);
        REQUIRE(cycle_degree(*res.witness) == 3);
        REQUIRE(res.witness_rank < res.witness_target);
        const conditions_result again =
            imposes_independent_conditions(sys, section_space::w(0), *res.witness);
        REQUIRE_FALSE(again.independent);
    }
    {
        elliptic_system sys(Rational(0), Rational(1), 1, 3);  // b = 1 <= p = 1
        const jva_result res = test_jet_very_ample(sys, 1, opt);
        REQUIRE(res.v == jva_result::verdict::no);
        REQUIRE(res.witness);
        REQUIRE(cycle_degree(*res.witness) == 2);
        REQUIRE_FALSE(
            imposes_independent_conditions(sys, section_space::w(0), *res.witness).independent);
    }
}

TEST_CASE("boundary witnesses on genus one sum to the origin", "[jets]") {
    // b = p + 1: a violating cycle exists exactly on the kernel of the sum map
    elliptic_system sys(Rational(0), Rational(1), 2, 3);
    jva_options opt;
    opt.allow_closed_form = false;
    opt.seed = 9;
    const jva_result res = test_jet_very_ample(sys, 1, opt);
    REQUIRE(res.v == jva_result::verdict::no);
    REQUIRE(res.witness);
    REQUIRE(cycle_degree(*res.witness) == 2);

    point sum = point::at_infinity();
    for (const auto& part : *res.witness)
        for (unsigned i = 0; i < part.mult; ++i) sum = sys.group_add(sum, part.pt);
    REQUIRE(sum.k == point::kind::infinity);
}

TEST_CASE("ruling degeneracies on a product surface are found by the axis search", "[jets]") {
    // B = O(1,2) on P^1 x P^1: three points on a horizontal ruling collide
    toric_system sys(parse_polytope("0,0;1,0;0,1;1,1;0,2;1,2"), parse_polytope("box:2:1"));
    jva_options opt;
    opt.seed = 17;
    opt.trials = 4000;
    const jva_result res = test_jet_very_ample(sys, 2, opt);
    REQUIRE(res.v == jva_result::verdict::no);
    REQUIRE(res.witness);
    REQUIRE(cycle_degree(*res.witness) == 3);
    REQUIRE_FALSE(
        imposes_independent_conditions(sys, section_space::w(0), *res.witness).independent);
}

TEST_CASE("searches that find nothing stay agnostic", "[jets]") {
    // O(2) on P^2 is 1-very-ample, but no closed form is wired for surfaces:
    // an exhausted search must answer unknown, never yes
    toric_system sys(parse_polytope("simplex:2:2"), parse_polytope("simplex:2:1"));
    jva_options opt;
    opt.trials = 300;
    opt.seed = 3;
    const jva_result res = test_jet_very_ample(sys, 1, opt);
    REQUIRE(res.v == jva_result::verdict::unknown);
    REQUIRE_FALSE(res.witness);
}

TEST_CASE("the verdict concerns B and ignores the polarization degree", "[jets]") {
    projline_system sys(2, 5);  // d = 5 plays no role in 2-jet very ampleness of O(2)
    REQUIRE(test_jet_very_ample(sys, 2).v == jva_result::verdict::yes);
    REQUIRE(test_jet_very_ample(sys, 3).v == jva_result::verdict::no);
}

TEST_CASE("jets at the elliptic origin stop at order zero", "[jets]") {
    elliptic_system sys(Rational(0), Rational(1), 2, 3);
    REQUIRE_NOTHROW(
        imposes_independent_conditions(sys, section_space::w(0), parse_cycle(sys, "O + (0,1)")));
    REQUIRE_THROWS_AS(
        imposes_independent_conditions(sys, section_space::w(0), parse_cycle(sys, "O^2")),
        unsupported_point);
}
