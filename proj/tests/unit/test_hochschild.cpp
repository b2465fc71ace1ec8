#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "twocy/hochschild.hpp"
#include "twocy/nccalc.hpp"

using namespace twocy;
using namespace twocy::testing;

namespace {

std::vector<AInfCategory> samples() {
    auto alg_a2 = derived_preprojective(Quiver::a2());
    auto alg_j = derived_preprojective(Quiver::jordan());
    return {ground_field(), path_a2(), path_category(alg_a2, 3), path_category(alg_j, 2), surface_algebra(1),
            planted_surface(5)};
}

}  // namespace

TEST_CASE("b squares to zero and descends to the cyclic quotient") {
    std::mt19937 gen(1);
    for (const auto& cat : samples()) {
        const int window = cat.exact_above_cap ? 4 : cat.arity_cap;
        for (int n = 1; n <= std::min(window, 3); ++n) {
            Chain c = random_chain(cat, gen, n);
            CHECK(hochschild_b(cat, hochschild_b(cat, c, window), window).empty());
            Chain r = c;
            for (int k = 0; k < n; ++k) r = cyclic_rotate(cat, r);
            CHECK(r == c);
            // (1 - F) followed by the quotient map vanishes.
            Chain diff = c;
            for (const auto& [t, v] : cyclic_rotate(cat, c)) diff = plus(diff, Chain{{t, -v}});
            CHECK(cyclic_class(cat, diff).empty());
            // b preserves the image of 1 - F, so it descends to the quotient.
            CHECK(cyclic_class(cat, hochschild_b(cat, diff, window)).empty());
        }
    }
}

TEST_CASE("Connes operator identities on strictly unital categories") {
    std::mt19937 gen(2);
    for (const auto& cat : samples()) {
        if (!cat.exact_above_cap) continue;
        REQUIRE(check_unitality(cat).kind == Unitality::strict);
        const int window = 5;
        for (int n = 1; n <= 3; ++n) {
            Chain c = random_chain(cat, gen, n);
            Chain bc = connes_B(cat, c, window);
            CHECK(connes_B(cat, bc, window).empty());
            Chain lhs = plus(hochschild_b(cat, bc, window), connes_B(cat, hochschild_b(cat, c, window), window));
            CHECK(lhs.empty());
        }
    }
}

TEST_CASE("small Hochschild chains") {
    auto k = ground_field();
    CHECK(hochschild_b(k, Chain{{{0}, Scalar(1)}}, 3).empty());
    // (1|1) -> b_2(1,1) + b_2 after rotation, which cancel since 1 is odd when shifted.
    CHECK(hochschild_b(k, Chain{{{0, 0}, Scalar(1)}}, 3).empty());
    CHECK(hochschild_b(k, Chain{{{0, 0, 0}, Scalar(1)}}, 3) == Chain{{{0, 0}, Scalar(1)}});
    // B(1) = (1|1) - F(1|1) = 2 (1|1)
    CHECK(connes_B(k, Chain{{{0}, Scalar(1)}}, 3) == Chain{{{0, 0}, Scalar(2)}});
    CHECK_THROWS_WITH_AS(connes_B(k, Chain{{{0, 0, 0}, Scalar(1)}}, 3), doctest::Contains("insufficient window"), std::invalid_argument);
    auto nu = k;
    nu.units.clear();
    CHECK_THROWS_WITH_AS(connes_B(nu, Chain{{{0}, Scalar(1)}}, 3), doctest::Contains("non-unital"), std::invalid_argument);
    CHECK(cyclic_basis(k, 1).size() == 1);
    CHECK(cyclic_basis(k, 2).empty());  // (1|1) is fixed by an odd rotation
    auto a2 = path_a2();
    CHECK(cyclic_basis(a2, 1).size() == 2);
    CHECK(cyclic_basis(a2, 2).empty());
    CHECK(hochschild_basis(a2, 2).size() == 2);
}

TEST_CASE("windowed Hochschild and cyclic homology") {
    auto k = ground_field();
    auto hh = windowed_homology(k, 5, 1, false);
    CHECK(hh.length_graded);
    CHECK(hh.by_length == std::map<std::pair<int, int>, int>{{{1, 0}, 1}});
    CHECK(hh.dims.at(0) == 1);
    CHECK(hh.stable.at(0));
    // The top chain (1|1|1|1|1) is an unbounded cycle: flagged as unstable.
    for (const auto& [d, h] : hh.dims)
        if (d != 0) CHECK_FALSE(hh.stable.at(d));

    auto hc = windowed_homology(k, 5, 1, true);
    CHECK(hc.by_length == std::map<std::pair<int, int>, int>{{{1, 0}, 1}, {{3, -2}, 1}});
    CHECK(hc.dims == std::map<int, int>{{0, 1}, {-2, 1}, {-4, 1}});

    auto a2 = windowed_homology(path_a2(), 4, 1, false);
    CHECK(a2.by_length == std::map<std::pair<int, int>, int>{{{1, 0}, 2}});

    // Growing the window leaves the interior unchanged.
    auto cat = surface_algebra(1);
    auto w4 = windowed_homology(cat, 4, 1, false);
    auto w5 = windowed_homology(cat, 5, 1, false);
    for (const auto& [key, h] : w4.by_length) CHECK(w5.by_length.at(key) == h);
}

TEST_CASE("windowed homology rejects categories failing their relations") {
    auto bad = path_a2();
    bad.add_op({2, 0}, 2, Scalar(1));  // a e_1 = 2a breaks associativity
    CHECK_THROWS_AS(windowed_homology(bad, 3, 1, false), std::invalid_argument);
}
