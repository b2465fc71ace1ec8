#include <functional>
#include <random>
#include <set>

#include "doctest.h"
#include "oracles.hpp"
#include "twocy/koszul.hpp"
#include "twocy/nccalc.hpp"

using namespace twocy;
using namespace twocy::testing;

namespace {

// Oracle for the rotation sign: Koszul signs of the cyclic permutation taken
// separately for internal and form degrees.
int oracle_rotation_sign(const Alphabet& a, const Word& w, std::size_t k) {
    std::vector<int> p, q;
    for (int c : w) {
        p.push_back(a.internal(c));
        q.push_back(is_d(c) ? 1 : 0);
    }
    std::vector<std::size_t> perm;
    for (std::size_t i = 0; i < w.size(); ++i) perm.push_back((i + k) % w.size());
    return koszul_sign_int(p, perm) * koszul_sign_int(q, perm);
}

}  // namespace

TEST_CASE("cyclic words: rotation signs and vanishing classes") {
    auto cat = surface_algebra(1);
    Alphabet a = Alphabet::of(cat);
    const int e = 0, x = 1, y = 2, t = 3;
    // theta_e is odd, so theta_e theta_e vanishes; d theta_x is odd too.
    NCForm f;
    f.cyclic = true;
    add_word(a, f, {theta(e), theta(e)}, Scalar(1));
    add_word(a, f, {dtheta(x), dtheta(x)}, Scalar(1));
    CHECK(f.zero());
    add_word(a, f, {theta(x), theta(y)}, Scalar(1));
    add_word(a, f, {theta(y), theta(x)}, Scalar(-1));
    CHECK(f.zero());
    add_word(a, f, {theta(e), theta(t)}, Scalar(1));
    add_word(a, f, {theta(t), theta(e)}, Scalar(1));
    CHECK(f.zero());

    Rng r(7);
    auto all = words(a, 4, 1, true);
    auto more = words(a, 3, 2, true);
    all.insert(all.end(), more.begin(), more.end());
    for (const auto& w : all) {
        for (std::size_t k = 1; k < w.size(); ++k) {
            Word rot = rotate_word(w, k);
            int s = oracle_rotation_sign(a, w, k);
            NCForm g;
            g.cyclic = true;
            add_word(a, g, w, Scalar(1));
            add_word(a, g, rot, Scalar(-s));
            CHECK_MESSAGE(g.zero(), word_str(a, w));
        }
    }
}

TEST_CASE("d squares to zero and the Cartan formula holds") {
    for (auto cat : {surface_algebra(1), two_object_pair()}) {
        Alphabet a = Alphabet::of(cat);
        Rng r(11);
        for (bool cyclic : {false, true}) {
            for (int order = 2; order <= 4; ++order)
                for (int nd = 0; nd <= 2; ++nd) {
                    NCForm f = random_form(a, r, order, nd, cyclic, 8);
                    CHECK(de_rham(a, de_rham(a, f)).zero());
                    for (int deg : {0, 1}) {
                        VectorField v = random_field(a, r, deg, 1, 8);
                        NCForm lhs = lie_derivative(a, v, f);
                        NCForm rhs = de_rham(a, contraction(a, v, f)) + contraction(a, v, de_rham(a, f));
                        CHECK_MESSAGE((lhs - rhs).zero(), form_str(a, lhs - rhs));
                        // [L_v, d] = 0
                        CHECK((lie_derivative(a, v, de_rham(a, f)) - de_rham(a, lie_derivative(a, v, f))).zero());
                    }
                }
        }
    }
}

TEST_CASE("cyclic de Rham complex is acyclic in positive order") {
    for (int k = 1; k <= 4; ++k) {
        auto defect = de_rham_defect(two_object_pair(), k);
        CHECK_MESSAGE(!defect, "order " << k << " q " << defect->first << " p " << defect->second);
    }
}

TEST_CASE("Q squares to zero exactly when the relations hold") {
    auto alg = derived_preprojective(Quiver::a2());
    auto good = path_category(alg, 4);
    auto bad = good;
    bad.add_op({bad.basis_index("a"), bad.basis_index("a*")}, bad.basis_index("a.a*"), Scalar(1));
    for (const auto* c : {&good, &bad}) {
        Alphabet a = Alphabet::of(*c);
        VectorField q = category_to_vectorfield(*c, 4);
        VectorField qq = bracket(a, q, q);
        bool q2_zero = true;
        for (const auto& [x, t] : qq.images)
            for (const auto& [w, v] : t)
                if (word_order(w) <= 3) q2_zero = false;
        CHECK(q2_zero == check_relations(*c, 3).pass);
        auto back = vectorfield_to_category(*c, q, 4);
        CHECK(back.ops == c->ops);
    }
}

TEST_CASE("potential round trip and the master equation") {
    auto cat = surface_algebra(2);
    Alphabet a = Alphabet::of(cat);
    auto w = potential_from_category(cat, 5);
    CHECK(function_degree(a, w) == 1);
    CHECK(w.orders_from(4).zero());
    auto back = category_from_potential(cat, w);
    CHECK(back.ops == cat.ops);
    NCForm omega = omega_from_pairing(a, *cat.pairing, 5);
    CHECK(poisson_bracket(a, w, w, omega).zero());

    // A random quartic perturbation: {W, W} = 0 iff the A-infinity relations hold.
    Rng r(3);
    for (int trial = 0; trial < 4; ++trial) {
        NCForm w4 = random_form(a, r, 4, 0, true, 5, 0.05, 1);
        NCForm wp = w + w4;
        auto c = category_from_potential(cat, wp);
        NCForm ww = poisson_bracket(a, wp, wp, omega);
        bool low = true;
        for (const auto& [u, v] : ww.terms)
            if (word_order(u) <= 5) low = false;
        CHECK(low == check_relations(c, 4).pass);
        CHECK(check_cyclicity(c, 4).pass);
    }
}

TEST_CASE("non-cyclic products are detected") {
    auto cat = surface_algebra(1);
    cat.add_op({1, 1, 1}, 3, Scalar(1));  // b_3(a, a, a) = t with <t, e> paired but not cyclic
    cat.arity_cap = 3;
    cat.exact_above_cap = true;
    auto rep = check_cyclicity(cat, 3);
    CHECK_FALSE(rep.pass);
    REQUIRE_FALSE(rep.witnesses.empty());
    CHECK(rep.witnesses.front().arity == 3);
    CHECK_THROWS_WITH_AS(potential_from_category(cat, 4), doctest::Contains("not cyclic"), std::invalid_argument);
}

TEST_CASE("Hamiltonian fields and the Poisson bracket") {
    auto cat = surface_algebra(1);
    Alphabet a = Alphabet::of(cat);
    NCForm omega = omega_from_pairing(a, *cat.pairing, 7);
    CHECK(omega.terms.size() == 2);  // d e d t and d a d b up to rotation
    Rng r(5);
    for (int trial = 0; trial < 6; ++trial) {
        NCForm f = random_form(a, r, 3, 0, true, 7, 0.3, trial % 2);
        NCForm g = random_form(a, r, 3 + trial % 2, 0, true, 7, 0.3, 0);
        NCForm h = random_form(a, r, 3, 0, true, 7, 0.3, 1);
        VectorField xg = hamiltonian(a, omega, g);
        CHECK((contraction(a, xg, omega) - de_rham(a, g)).zero());
        VectorField xf = hamiltonian(a, omega, f);
        NCForm fg = poisson_bracket(a, f, g, omega);
        CHECK((fg - contraction(a, xf, contraction(a, xg, omega))).zero());
        int df = function_degree(a, f), dg = function_degree(a, g), dh = function_degree(a, h);
        NCForm gf = poisson_bracket(a, g, f, omega);
        CHECK((fg + scaled(gf, Scalar(swap_sign(df, dg)))).zero());
        // Graded Jacobi: {f,{g,h}} = {{f,g},h} + (-1)^{|f||g|} {g,{f,h}}.
        NCForm lhs = poisson_bracket(a, f, poisson_bracket(a, g, h, omega), omega);
        NCForm rhs = poisson_bracket(a, fg, h, omega) +
                     scaled(poisson_bracket(a, g, poisson_bracket(a, f, h, omega), omega), Scalar(swap_sign(df, dg)));
        CHECK((lhs - rhs).zero());
        (void)dh;
    }
}

TEST_CASE("Hamiltonian flows preserve omega and compose") {
    auto cat = surface_algebra(1);
    Alphabet a = Alphabet::of(cat);
    const int cap = 6;
    NCForm omega = omega_from_pairing(a, *cat.pairing, cap);
    Rng r(19);
    NCForm s = random_form(a, r, 3, 0, true, cap, 0.4, 0);
    REQUIRE_FALSE(s.zero());
    auto phi = hamiltonian_exp(a, s, omega, cap);
    CHECK(substitute(a, phi, omega) == omega);
    auto inv = hamiltonian_exp(a, scaled(s, Scalar(-1)), omega, cap);
    auto id = compose(a, phi, inv);
    CHECK(id.images == identity_automorphism(a, cap).images);
    NCForm f = random_form(a, r, 3, 0, true, cap, 0.4, 1);
    CHECK(substitute(a, inv, substitute(a, phi, f)) == f);
}

TEST_CASE("Darboux normalization removes higher-order terms of a closed 2-form") {
    auto cat = surface_algebra(1);
    Alphabet a = Alphabet::of(cat);
    const int cap = 6;
    NCForm omega = omega_from_pairing(a, *cat.pairing, cap);
    // Pull back along a non-symplectic automorphism theta_a -> theta_a + theta_a theta_b.
    Automorphism psi = identity_automorphism(a, cap);
    psi.images[1][{theta(1), theta(2)}] = Scalar(1);
    psi.images[3][{theta(3), theta(1)}] = Scalar(2);
    NCForm bent = substitute(a, psi, omega);
    REQUIRE_FALSE(bent.orders_from(3).zero());
    CHECK(de_rham(a, bent).zero());
    auto res = darboux_normalize(a, bent, cap);
    CHECK(res.omega == omega);
    CHECK(substitute(a, res.phi, bent) == res.omega);
    CHECK_FALSE(res.steps.empty());
}

TEST_CASE("trace pairing of the surface algebra") {
    auto cat = surface_algebra(2);
    auto expect = cat.pairing;
    cat.pairing.reset();
    auto p = trace_pairing(cat);
    REQUIRE(p);
    CHECK(p->g == expect->g);
}

TEST_CASE("strictification undoes a planted symplectic change of coordinates") {
    auto base = surface_algebra(1);
    Alphabet a = Alphabet::of(base);
    const int cap = 6;
    NCForm omega = omega_from_pairing(a, *base.pairing, cap);
    auto w = potential_from_category(base, cap);
    // S = theta_e theta_t theta_a: degree 1 - 1 + 0 = 0, touches the unit.
    NCForm s = make_form(a, Terms{{{theta(0), theta(3), theta(1)}, Scalar(1)}, {{theta(0), theta(3), theta(2)}, Scalar(3)}}, true, cap);
    REQUIRE_FALSE(s.zero());
    NCForm planted_w = substitute(a, hamiltonian_exp(a, s, omega, cap), w);
    REQUIRE_FALSE(is_reduced(a, planted_w.orders_from(4)));
    auto planted = category_from_potential(base, planted_w);
    CHECK(check_relations(planted, cap - 1).pass);
    CHECK(check_cyclicity(planted, cap - 1).pass);
    CHECK(check_unitality(planted).kind != Unitality::strict);

    auto res = strictify_units(planted, cap);
    CHECK_FALSE(res.identity);
    CHECK(res.omega_preserved);
    CHECK(is_reduced(a, res.potential.orders_from(4)));
    CHECK(check_relations(*res.cat, cap - 1).pass);
    CHECK(check_unitality(*res.cat).kind == Unitality::strict);
    res.iso.validate();
    auto fr = check_functor(res.iso, cap - 1);
    CHECK_MESSAGE(fr.pass, fr.message);

    // Already strict input is left alone.
    auto again = strictify_units(*res.cat, cap);
    CHECK(again.identity);
    CHECK(again.cat->ops == res.cat->ops);
}

TEST_CASE("strictification rejects inputs outside its hypotheses") {
    auto cat = surface_algebra(1);
    auto nop = cat;
    nop.pairing.reset();
    CHECK_THROWS_AS(strictify_units(nop, 5), std::invalid_argument);
    auto modp = cat;
    modp.field = FieldCtx::prime(7);
    CHECK_THROWS_AS(strictify_units(modp, 5), FieldError);
}

TEST_CASE("sigma formality certificates for Ext algebras of simples") {
    SUBCASE("Jordan quiver: genus one") {
        auto ext = ext_minimal_model(Quiver::jordan(), 3, 4);
        auto cert = certify_sigma_formality(*ext, 5);
        INFO((cert.failures.empty() ? std::string() : cert.failures.front()));
        CHECK(cert.pass);
        CHECK(cert.genus == std::vector<int>{1});
        CHECK(cert.cubic);
    }
    SUBCASE("A2 quiver: two spheres") {
        auto ext = ext_minimal_model(Quiver::a2(), 3, 4);
        auto cert = certify_sigma_formality(*ext, 5);
        INFO((cert.failures.empty() ? std::string() : cert.failures.front()));
        CHECK(cert.pass);
        CHECK(cert.genus == std::vector<int>{0, 0});
    }
    SUBCASE("surface of genus two with a planted change of coordinates") {
        auto base = surface_algebra(2);
        Alphabet a = Alphabet::of(base);
        NCForm omega = omega_from_pairing(a, *base.pairing, 5);
        NCForm s = make_form(a, Terms{{{theta(0), theta(5), theta(1)}, Scalar(2)}}, true, 5);
        auto planted = category_from_potential(base, substitute(a, hamiltonian_exp(a, s, omega, 5), potential_from_category(base, 5)));
        auto cert = certify_sigma_formality(planted, 5);
        CHECK(cert.pass);
        CHECK(cert.genus == std::vector<int>{2});
    }
    SUBCASE("Ext in degree 3 fails") {
        auto cat = surface_algebra(1);
        cat.basis.push_back({"z", 0, 0, 3});
        cat.pairing.reset();
        auto cert = certify_sigma_formality(cat, 5);
        CHECK_FALSE(cert.pass);
        REQUIRE_FALSE(cert.failures.empty());
        CHECK(cert.failures.front() == "Ext^3 != 0");
    }
}

TEST_CASE("small cases of the dictionary") {
    auto cat = surface_algebra(1);
    Alphabet a = Alphabet::of(cat);
    auto empty = cat;
    empty.ops.clear();
    CHECK(category_to_vectorfield(empty, 4).images.empty());
    CHECK(potential_from_category(empty, 4).zero());

    VectorField q = category_to_vectorfield(cat, 4);
    NCForm dth;
    dth.terms[{dtheta(1)}] = Scalar(1);
    NCForm th;
    th.terms[{theta(1)}] = Scalar(1);
    CHECK(contraction(a, q, dth).terms == q.images.at(1));
    CHECK(contraction(a, q, th).zero());
    CHECK(lie_derivative(a, q, th).terms == q.images.at(1));
    NCForm one;
    one.terms[{-1}] = Scalar(1);
    CHECK(de_rham(a, one).zero());

    // Bigraded sign rule: d only sees form degree, so passing the odd
    // function theta_e costs nothing.
    NCForm ea;
    ea.terms[{theta(0), theta(1)}] = Scalar(1);
    Terms expect{{{dtheta(0), theta(1)}, Scalar(1)}, {{theta(0), dtheta(1)}, Scalar(1)}};
    CHECK(de_rham(a, ea).terms == expect);

    NCForm omega = omega_from_pairing(a, *cat.pairing, 5);
    CHECK(hamiltonian_exp(a, NCForm{}, omega, 5).images == identity_automorphism(a, 5).images);
    auto flat = darboux_normalize(a, omega, 5);
    CHECK(flat.steps.empty());
    CHECK(flat.omega == omega);
}

TEST_CASE("Derived preprojective differential appears in Q") {
    auto alg = derived_preprojective(Quiver::jordan());
    auto c = path_category(alg, 3);
    Alphabet a = Alphabet::of(c);
    VectorField q = category_to_vectorfield(c, 3);
    // b_1 = -d, so the dual of d u = [a, a*] appears in Q with the opposite sign.
    int u = c.basis_index("u_1"), aas = c.basis_index("a.a*"), asa = c.basis_index("a*.a");
    REQUIRE(u >= 0);
    const Vec* b1 = c.op({u});
    REQUIRE(b1);
    for (const auto& [y, v] : *b1) {
        REQUIRE(q.images.count(y));
        CHECK(q.images.at(y).at(Word{theta(u)}) == v);
    }
    CHECK(b1->count(aas) + b1->count(asa) == 2);
}

TEST_CASE("symplectic error cases") {
    auto cat = surface_algebra(1);
    Alphabet a = Alphabet::of(cat);
    CyclicPairing deg = *cat.pairing;
    deg.g.erase({1, 2});
    deg.g.erase({2, 1});
    CHECK_THROWS_WITH_AS(omega_from_pairing(a, deg, 4), "pairing is degenerate", std::invalid_argument);
    CyclicPairing asym = *cat.pairing;
    asym.g[{2, 1}] = Scalar(-1);
    CHECK_THROWS_AS(omega_from_pairing(a, asym, 4), std::invalid_argument);

    NCForm omega = omega_from_pairing(a, *cat.pairing, 5);
    Automorphism psi = identity_automorphism(a, 5);
    psi.images[1][{theta(1), theta(2)}] = Scalar(1);
    NCForm bent = substitute(a, psi, omega);
    NCForm f = make_form(a, Terms{{{theta(1), theta(2), theta(3)}, Scalar(1)}}, true, 5);
    CHECK_THROWS_WITH_AS(poisson_bracket(a, f, f, bent), doctest::Contains("not constant"), std::invalid_argument);
    NCForm open;
    open.cyclic = true;
    open.order_cap = 5;
    add_word(a, open, {dtheta(1), theta(2), dtheta(0)}, Scalar(1));
    CHECK_THROWS_WITH_AS(darboux_normalize(a, omega + open, 5), doctest::Contains("not closed"), std::invalid_argument);
    CHECK_THROWS_AS(hamiltonian_exp(a, make_form(a, Terms{{{theta(1), theta(2)}, Scalar(1)}}, true, 5), omega, 5),
                    std::invalid_argument);
}

TEST_CASE("planted non-cyclic product fails the certificate upstream") {
    auto cat = surface_algebra(1);
    cat.add_op({1, 1, 2}, 3, Scalar(1));
    cat.arity_cap = 3;
    cat.exact_above_cap = true;
    auto cert = certify_sigma_formality(cat, 5);
    CHECK_FALSE(cert.pass);
    REQUIRE_FALSE(cert.failures.empty());
    CHECK(cert.failures.front().find("not cyclic") != std::string::npos);
}
