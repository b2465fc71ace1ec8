#include <algorithm>
#include <numeric>
#include <random>

#include "doctest.h"
#include "twocy/koszul.hpp"
#include "twocy/polynomial.hpp"
#include "twocy/sparse.hpp"

using namespace twocy;

TEST_CASE("scalar parsing and canonical form") {
    CHECK(Scalar::parse("6/4").str() == "3/2");
    CHECK(Scalar::parse("-2/-4").str() == "1/2");
    CHECK_THROWS_AS(Scalar::parse("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(Scalar::parse("x"), std::invalid_argument);
    CHECK(Scalar::ratio(1, 3) + Scalar::ratio(2, 3) == Scalar(1));
}

TEST_CASE("prime field arithmetic and coercion") {
    Scalar a = Scalar::mod(7, 3);
    CHECK((a * a).residue() == 2);
    CHECK((a.inv() * a).is_one());
    CHECK((Scalar::ratio(1, 2) + a).residue() == 0);  // 4 + 3 = 0 mod 7
    CHECK_THROWS_AS(Scalar::ratio(1, 7).in(FieldCtx::prime(7)), FieldError);
    CHECK_THROWS_AS(Scalar::mod(5, 1) + Scalar::mod(7, 1), FieldError);
    CHECK_THROWS_AS(FieldCtx::prime(9), FieldError);
}

TEST_CASE("rank_kernel_image on fixed matrices") {
    auto id = rank_kernel_image(SparseMatrix::identity(3));
    CHECK(id.rank == 3);
    CHECK(id.kernel.empty());

    auto z = rank_kernel_image(SparseMatrix(2, 5));
    CHECK(z.rank == 0);
    CHECK(z.kernel.size() == 5);

    // Hand reduction: row 2 = 2 * row 1, so x + 2y = 0.
    auto m = SparseMatrix::from_dense({{1, 2}, {2, 4}});
    auto r = rank_kernel_image(m);
    CHECK(r.rank == 1);
    REQUIRE(r.kernel.size() == 1);
    CHECK(r.kernel[0] == DenseVec{Scalar(-2), Scalar(1)});
    REQUIRE(r.image.size() == 1);
    CHECK(r.image[0] == DenseVec{Scalar(1), Scalar(2)});
}

TEST_CASE("random matrices: rank-nullity and verified kernels") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 40; ++trial) {
        std::size_t rows = 1 + rng() % 6, cols = 1 + rng() % 6;
        SparseMatrix m(rows, cols);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j)
                if (rng() % 2) m.set(i, j, Scalar::ratio(static_cast<long>(rng() % 7) - 3, 1 + static_cast<long>(rng() % 3)));
        auto r = rank_kernel_image(m);
        CHECK(r.rank + r.kernel.size() == cols);
        CHECK(r.image.size() == r.rank);
        CHECK(rank(m) == r.rank);
        CHECK(rank(m.transpose()) == r.rank);
        for (const auto& k : r.kernel)
            for (const auto& x : m.apply(k)) CHECK(x.is_zero());
    }
}

TEST_CASE("solve and inverse") {
    auto m = SparseMatrix::from_dense({{1, 1, 0}, {0, 1, 1}});
    auto x = solve(m, {Scalar(2), Scalar(3)});
    REQUIRE(x);
    CHECK(m.apply(*x) == DenseVec{Scalar(2), Scalar(3)});
    CHECK((*x)[2].is_zero());  // free variable set to zero
    auto bad = SparseMatrix::from_dense({{1, 1}, {1, 1}});
    CHECK_FALSE(solve(bad, {Scalar(1), Scalar(2)}));
    CHECK_FALSE(inverse(bad));
    auto g = SparseMatrix::from_dense({{2, 1}, {1, 1}});
    auto gi = inverse(g);
    REQUIRE(gi);
    CHECK(g * *gi == SparseMatrix::identity(2));
}

TEST_CASE("echelon tracks combinations") {
    Echelon e;
    CHECK(e.insert({{0, Scalar(1)}, {1, Scalar(1)}}));
    CHECK(e.insert({{1, Scalar(1)}, {2, Scalar(1)}}));
    CHECK_FALSE(e.insert({{0, Scalar(1)}, {1, Scalar(2)}, {2, Scalar(1)}}));
    SparseVec c;
    auto rem = e.reduce_tracked({{0, Scalar(1)}, {2, Scalar(-1)}}, c);
    CHECK(rem.empty());
    CHECK(c == SparseVec{{0, Scalar(1)}, {1, Scalar(-1)}});
}

TEST_CASE("koszul_sign examples") {
    CHECK(koszul_sign({1, 1}, {1, 0}) == Scalar(-1));
    CHECK(koszul_sign({0, 1}, {1, 0}) == Scalar(1));
    CHECK(koszul_sign({1, 1, 1}, {1, 2, 0}) == Scalar(1));
    CHECK_THROWS_AS(koszul_sign({1, 1}, {0, 0}), std::invalid_argument);
    CHECK_THROWS_AS(koszul_sign({1, 1}, {0, 2}), std::invalid_argument);
}

TEST_CASE("koszul_sign is multiplicative under composition") {
    std::mt19937_64 rng(5);
    for (std::size_t n = 1; n <= 4; ++n) {
        std::vector<std::size_t> s(n), t(n);
        std::iota(s.begin(), s.end(), 0);
        do {
            std::iota(t.begin(), t.end(), 0);
            do {
                std::vector<int> deg(n);
                for (auto& d : deg) d = static_cast<int>(rng() % 5) - 2;
                // first apply t, then s to the rearranged list
                std::vector<int> deg_t(n);
                for (std::size_t k = 0; k < n; ++k) deg_t[k] = deg[t[k]];
                std::vector<std::size_t> comp(n);
                for (std::size_t k = 0; k < n; ++k) comp[k] = t[s[k]];
                CHECK(koszul_sign(deg, comp) == koszul_sign(deg, t) * koszul_sign(deg_t, s));
            } while (std::next_permutation(t.begin(), t.end()));
        } while (std::next_permutation(s.begin(), s.end()));
    }
}

namespace {
RatPolynomial poly(std::vector<long> c) {
    std::vector<Scalar> v;
    for (long x : c) v.emplace_back(x);
    return RatPolynomial(v);
}
RatPolynomial expand(const std::vector<std::pair<RatPolynomial, int>>& f) {
    RatPolynomial p = RatPolynomial::constant(1);
    for (const auto& [g, m] : f) p = p * g.pow(m);
    return p;
}
}  // namespace

TEST_CASE("factor_rational_poly examples") {
    auto f1 = factor_rational_poly(poly({-1, 0, 1}));
    REQUIRE(f1.size() == 2);
    CHECK(f1[0].first == poly({-1, 1}));
    CHECK(f1[1].first == poly({1, 1}));

    auto f2 = factor_rational_poly(poly({1, 0, 1}));
    REQUIRE(f2.size() == 1);
    CHECK(f2[0].first == poly({1, 0, 1}));

    // t^4 - 5t^2 + 6: no rational roots (candidates +-1,2,3,6 fail), so any
    // split is into quadratics; t^2-2 and t^2-3 have non-square discriminants.
    auto f3 = factor_rational_poly(poly({6, 0, -5, 0, 1}));
    REQUIRE(f3.size() == 2);
    CHECK(f3[0].first == poly({-3, 0, 1}));
    CHECK(f3[1].first == poly({-2, 0, 1}));

    CHECK_THROWS_AS(factor_rational_poly(RatPolynomial()), std::invalid_argument);
}

TEST_CASE("factorization with multiplicities and rational coefficients") {
    // (t-1)^2 (2t+1)^3 / 5
    auto p = (poly({-1, 1}).pow(2) * poly({1, 2}).pow(3)).scaled(Scalar::ratio(1, 5));
    auto f = factor_rational_poly(p);
    REQUIRE(f.size() == 2);
    CHECK(f[0].first == poly({-1, 1}));
    CHECK(f[0].second == 2);
    CHECK(f[1].first == poly({1, 2}));
    CHECK(f[1].second == 3);
    CHECK(expand(f).monic() == p.monic());
}

TEST_CASE("high-degree factorization multiplies back and splits correctly") {
    // (t^4+1)(t^3-t-1)(t^2+t+1)(3t-2): t^4+1 splits mod every prime, which
    // exercises recombination.
    auto p = poly({1, 0, 0, 0, 1}) * poly({-1, -1, 0, 1}) * poly({1, 1, 1}) * poly({-2, 3});
    auto f = factor_rational_poly(p);
    CHECK(f.size() == 4);
    CHECK(expand(f).monic() == p.monic());
    for (const auto& [g, m] : f) {
        CHECK(m == 1);
        if (g.degree() < 5) CHECK(factor_by_search(g).size() == 1);
    }
}

TEST_CASE("random products agree with exhaustive search") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 30; ++trial) {
        RatPolynomial p = RatPolynomial::constant(1);
        int deg = 0;
        while (deg < 4) {
            int d = 1 + static_cast<int>(rng() % 2);
            if (deg + d > 4) d = 4 - deg;
            std::vector<long> c(static_cast<std::size_t>(d) + 1);
            for (auto& x : c) x = static_cast<long>(rng() % 7) - 3;
            c.back() = 1 + static_cast<long>(rng() % 2);
            p = p * poly(c);
            deg += d;
        }
        auto f = factor_rational_poly(p);
        CHECK(f == factor_by_search(p));
        CHECK(expand(f).monic() == p.monic());
    }
}
