#include <random>

#include "doctest.h"
#include "twocy/quiver.hpp"

using namespace twocy;

TEST_CASE("double") {
    auto j = double_quiver(Quiver::jordan());
    CHECK(j.vertices.size() == 1);
    CHECK(j.arrows.size() == 2);
    CHECK(j.arrows[1].id == "a*");

    auto a = double_quiver(Quiver::a2());
    REQUIRE(a.arrows.size() == 2);
    CHECK(a.arrows[0].src == 0);
    CHECK(a.arrows[0].tgt == 1);
    CHECK(a.arrows[1].src == 1);
    CHECK(a.arrows[1].tgt == 0);
    CHECK(a.star == std::vector<int>{1, 0});
    a.validate();

    Quiver empty{{"1", "2", "3"}, {}, {}};
    auto e = double_quiver(empty);
    CHECK(e.vertices.size() == 3);
    CHECK(e.arrows.empty());

    // Doubling a double, with (a*)* = a, doubles the arrow count again.
    CHECK(double_quiver(a).arrows.size() == 4);
}

TEST_CASE("euler_form examples") {
    CHECK(euler_form(Quiver::jordan(), {2}, {2}) == Scalar(0));
    CHECK(euler_form(Quiver::a2(), {1, 1}, {1, 1}) == Scalar(1));
    for (int g = 0; g <= 4; ++g) CHECK(euler_form(Quiver::loops(g), {1}, {1}) == Scalar(1 - g));
}

TEST_CASE("euler_form is bilinear") {
    std::mt19937_64 rng(7);
    Quiver q{{"1", "2", "3"}, {{"a", 0, 1}, {"b", 1, 2}, {"c", 2, 0}, {"l", 1, 1}}, {}};
    auto rv = [&] {
        DimensionVector v(3);
        for (auto& x : v) x = static_cast<long>(rng() % 9) - 4;
        return v;
    };
    for (int t = 0; t < 50; ++t) {
        auto d1 = rv(), d2 = rv(), e = rv();
        long s = static_cast<long>(rng() % 7) - 3;
        DimensionVector comb(3);
        for (int i = 0; i < 3; ++i) comb[i] = d1[i] + s * d2[i];
        CHECK(euler_form(q, comb, e) == euler_form(q, d1, e) + Scalar(s) * euler_form(q, d2, e));
        CHECK(euler_form(q, e, comb) == euler_form(q, e, d1) + Scalar(s) * euler_form(q, e, d2));
    }
}

TEST_CASE("preprojective relations") {
    Quiver point{{"1"}, {}, {}};
    auto pk = preprojective(point);
    CHECK(pk.relations.empty());
    CHECK(pk.gens.quiver.arrows.empty());

    // Single vertex: sum [a,a*] = a a* - a* a.
    auto pj = preprojective(Quiver::jordan());
    REQUIRE(pj.relations.size() == 1);
    PathCombo expect;
    add_term(expect, Path{0, 0, {0, 1}}, 1);
    add_term(expect, Path{0, 0, {1, 0}}, -1);
    CHECK(pj.relations[0] == expect);

    // A2: e_1 part is -a* a, e_2 part is a a*.
    auto pa = preprojective(Quiver::a2());
    REQUIRE(pa.relations.size() == 2);
    CHECK(pa.relations[0] == PathCombo{{Path{0, 0, {1, 0}}, Scalar(-1)}});
    CHECK(pa.relations[1] == PathCombo{{Path{1, 1, {0, 1}}, Scalar(1)}});
}

TEST_CASE("derived preprojective") {
    Quiver point{{"1"}, {}, {}};
    auto g0 = derived_preprojective(point);
    REQUIRE(g0.gens.quiver.arrows.size() == 1);
    CHECK(g0.gens.degree[0] == -1);
    CHECK(g0.differential.empty());

    auto gj = derived_preprojective(Quiver::jordan());
    REQUIRE(gj.gens.quiver.arrows.size() == 3);
    CHECK(gj.gens.degree == std::vector<int>{0, 0, -1});
    CHECK(gj.differential.at(2) == preprojective(Quiver::jordan()).relations[0]);

    auto ga = derived_preprojective(Quiver::a2());
    CHECK(ga.differential.at(2) == PathCombo{{Path{0, 0, {1, 0}}, Scalar(-1)}});
    CHECK(ga.differential.at(3) == PathCombo{{Path{1, 1, {0, 1}}, Scalar(1)}});
    CHECK(check_dg(ga, 4).ok);
    CHECK(check_dg(gj, 4).ok);
    CHECK(check_dg(derived_preprojective(Quiver::loops(2)), 4).ok);
}

TEST_CASE("degree-zero truncation matches the preprojective algebra") {
    for (const auto& q : {Quiver::jordan(), Quiver::a2(), Quiver::loops(2)}) {
        auto g = derived_preprojective(q);
        auto p = preprojective(q);
        std::vector<PathCombo> images;
        for (const auto& [a, img] : g.differential) images.push_back(img);
        CHECK(images == p.relations);
    }
}

TEST_CASE("check_dg failures") {
    DGQuiverAlgebra bad;
    bad.gens.quiver = {{"1"}, {{"a", 0, 0}, {"u", 0, 0}}, {}};
    bad.gens.degree = {0, -1};
    bad.differential[1] = {{Path{0, 0, {0}}, Scalar(1)}};  // du = a: ok degree
    bad.differential[0] = {{Path{0, 0, {1}}, Scalar(1)}};  // da = u: degree -1
    auto r = check_dg(bad, 3);
    CHECK_FALSE(r.ok);
    CHECK(r.message.find("differential degree ≠ +1") != std::string::npos);

    DGQuiverAlgebra zero;
    zero.gens.quiver = Quiver::jordan();
    zero.gens.degree = {0};
    CHECK(check_dg(zero, 4).ok);
}

TEST_CASE("Leibniz sign on odd letters") {
    // Generators x (deg 1), y (deg 0) with dy = x: d(x y) = -x x.
    DGQuiverAlgebra alg;
    alg.gens.quiver = {{"1"}, {{"x", 0, 0}, {"y", 0, 0}}, {}};
    alg.gens.degree = {1, 0};
    alg.differential[1] = {{Path{0, 0, {0}}, Scalar(1)}};
    CHECK(alg.d(Path{0, 0, {0, 1}}) == PathCombo{{Path{0, 0, {0, 0}}, Scalar(-1)}});
    CHECK(alg.d(Path{0, 0, {1, 0}}) == PathCombo{{Path{0, 0, {0, 0}}, Scalar(1)}});
}

TEST_CASE("path enumeration by weight") {
    auto g = derived_preprojective(Quiver::jordan());
    std::vector<int> w{1, 1, 2};
    auto ps = enumerate_paths(g.gens.quiver, w, 2);
    // e, a, a*, u, and the four length-two words in a, a*.
    CHECK(ps.size() == 8);
}
