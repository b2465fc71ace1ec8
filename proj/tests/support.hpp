#pragma once

#include <memory>
#include <string>

#include "twocy/ainfinity.hpp"
#include "twocy/dgcat.hpp"
#include "twocy/quiver.hpp"

namespace twocy::testing {

// Cohomology ring of a closed genus-g surface as a strictly unital graded
// commutative algebra: e, a_1..a_g, b_1..b_g, t with a_i b_i = t = -b_i a_i.
// Stored in b-form, b_2(x, y) = (-1)^{deg x} m_2(x, y); pairing <x, y> = [b_2(x, y)]_t.
inline AInfCategory surface_algebra(int g) {
    AInfCategory c;
    c.objects = {"o"};
    c.basis.push_back({"e", 0, 0, 0});
    for (int i = 1; i <= g; ++i) c.basis.push_back({"a" + std::to_string(i), 0, 0, 1});
    for (int i = 1; i <= g; ++i) c.basis.push_back({"b" + std::to_string(i), 0, 0, 1});
    c.basis.push_back({"t", 0, 0, 2});
    const int e = 0, t = 2 * g + 1;
    auto m2 = [&](int x, int y, int out, int sign) {
        int s = (c.basis[static_cast<std::size_t>(x)].degree % 2) ? -sign : sign;
        c.add_op({x, y}, out, Scalar(s));
    };
    for (int x = 0; x <= t; ++x) {
        m2(e, x, x, 1);
        if (x != e) m2(x, e, x, 1);
    }
    CyclicPairing p;
    p.g[{e, t}] = Scalar(1);
    p.g[{t, e}] = Scalar(1);
    for (int i = 1; i <= g; ++i) {
        m2(i, g + i, t, 1);
        m2(g + i, i, t, -1);
        p.g[{i, g + i}] = Scalar(-1);
        p.g[{g + i, i}] = Scalar(1);
    }
    c.units[0] = e;
    c.pairing = p;
    c.arity_cap = 2;
    c.exact_above_cap = true;
    return c;
}

// Minimal model of the Koszul dual of the derived preprojective path
// category of q, i.e. the Ext algebra of the simples.
inline std::shared_ptr<AInfCategory> ext_minimal_model(const Quiver& q, int weight, int cap) {
    auto alg = derived_preprojective(q);
    auto a = path_category(alg, weight);
    auto dual = std::make_shared<AInfCategory>(bar_dual_category(a, path_category_weights(alg, weight), weight));
    return minimal_model(dual, nullptr, cap).min;
}

}  // namespace twocy::testing
