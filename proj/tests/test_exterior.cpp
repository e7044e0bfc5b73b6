#include <catch2/catch_amalgamated.hpp>

#include "syzlab/exterior.hpp"

using namespace syzlab;

TEST_CASE("wedge basis is lexicographic and complete", "[exterior]") {
    const auto basis = wedge_basis(4, 2);
    REQUIRE(basis.size() == 6);
    REQUIRE(basis.front() == wedge_index{0, 1});
    REQUIRE(basis.back() == wedge_index{2, 3});
    for (std::size_t i = 1; i < basis.size(); ++i) REQUIRE(basis[i - 1] < basis[i]);

    REQUIRE(wedge_basis(5, 0).size() == 1);
    REQUIRE(wedge_basis(5, 0).front().empty());
    REQUIRE(wedge_basis(3, 4).empty());
    REQUIRE(wedge_basis(6, 6).size() == 1);
}

TEST_CASE("wedge rank and unrank are mutually inverse", "[exterior]") {
    for (unsigned n = 1; n <= 8; ++n)
        for (unsigned p = 0; p <= n; ++p) {
            const auto basis = wedge_basis(n, p);
            REQUIRE(basis.size() == binomial_size_t(n, p));
            for (std::size_t r = 0; r < basis.size(); ++r) {
                REQUIRE(wedge_rank(basis[r], n) == r);
                REQUIRE(wedge_unrank(r, n, p) == basis[r]);
            }
        }
}

TEST_CASE("wedge rank validates its input", "[exterior]") {
    REQUIRE_THROWS_AS(wedge_rank({2, 1}, 4), index_error);
    REQUIRE_THROWS_AS(wedge_rank({1, 1}, 4), index_error);
    REQUIRE_THROWS_AS(wedge_rank({1, 4}, 4), index_error);
}

TEST_CASE("contraction removes one slot with alternating sign", "[exterior]") {
    const wedge_index w{1, 3, 5};
    {
        const auto [rest, sign] = wedge_contract(w, 0);
        REQUIRE(rest == wedge_index{3, 5});
        REQUIRE(sign == 1);
    }
    {
        const auto [rest, sign] = wedge_contract(w, 1);
        REQUIRE(rest == wedge_index{1, 5});
        REQUIRE(sign == -1);
    }
    {
        const auto [rest, sign] = wedge_contract(w, 2);
        REQUIRE(rest == wedge_index{1, 3});
        REQUIRE(sign == 1);
    }
    REQUIRE_THROWS_AS(wedge_contract(w, 3), index_error);
}

TEST_CASE("insertion is the inverse of contraction and counts crossings", "[exterior]") {
    {
        const auto [out, sign] = wedge_insert({1, 3}, 2);
        REQUIRE(out == wedge_index{1, 2, 3});
        REQUIRE(sign == -1);  // one crossing
    }
    {
        const auto [out, sign] = wedge_insert({1, 3}, 0);
        REQUIRE(out == wedge_index{0, 1, 3});
        REQUIRE(sign == 1);
    }
    {
        const auto [out, sign] = wedge_insert({1, 3}, 7);
        REQUIRE(out == wedge_index{1, 3, 7});
        REQUIRE(sign == 1);
    }
    {
        const auto [out, sign] = wedge_insert({}, 4);
        REQUIRE(out == wedge_index{4});
        REQUIRE(sign == 1);
    }
    REQUIRE_THROWS_AS(wedge_insert({1, 3}, 3), index_error);

    // round trip: contract then insert restores tuple and the signs cancel
    const wedge_index w{0, 2, 5, 6};
    for (unsigned j = 0; j < w.size(); ++j) {
        const auto [rest, s1] = wedge_contract(w, j);
        const auto [back, s2] = wedge_insert(rest, w[j]);
        REQUIRE(back == w);
        REQUIRE(s1 * s2 == 1);
    }
}
