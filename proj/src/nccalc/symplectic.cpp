#include <functional>
#include <set>

#include "twocy/koszul.hpp"
#include "twocy/nccalc.hpp"

namespace twocy {

namespace {

Word constant_word(int o) { return Word{-1 - o}; }

NCForm generator(int x, int cap) {
    NCForm f;
    f.order_cap = cap;
    f.terms[Word{theta(x)}] = Scalar(1);
    return f;
}

}  // namespace

NCForm omega_from_pairing(const Alphabet& a, const CyclicPairing& p, int order_cap) {
    const std::size_t n = a.size();
    SparseMatrix g(n, n);
    for (const auto& [xy, c] : p.g)
        if (!c.is_zero()) g.set(static_cast<std::size_t>(xy.first), static_cast<std::size_t>(xy.second), c);
    for (const auto& [xy, c] : g.entries()) {
        auto [x, y] = xy;
        Scalar back = g.get(y, x);
        if (back != c * Scalar(swap_sign(a.degree[x], a.degree[y])))
            throw std::invalid_argument("pairing is not graded symmetric on " + a.labels[x] + ", " + a.labels[y]);
    }
    if (!inverse(g)) throw std::invalid_argument("pairing is degenerate");
    NCForm w;
    w.cyclic = true;
    w.order_cap = order_cap;
    for (const auto& [xy, c] : g.entries())
        add_word(a, w, Word{dtheta(static_cast<int>(xy.first)), dtheta(static_cast<int>(xy.second))}, c / Scalar(2));
    return w;
}

SparseMatrix omega_matrix(const Alphabet& a, const NCForm& omega) {
    SparseMatrix c(a.size(), a.size());
    for (const auto& [w, k] : omega.terms) {
        if (w.size() != 2 || !is_d(w[0]) || !is_d(w[1]))
            throw std::invalid_argument("symplectic form is not constant; normalize it with darboux first");
        int x = letter_of(w[0]), y = letter_of(w[1]);
        c.add(static_cast<std::size_t>(x), static_cast<std::size_t>(y), k);
        c.add(static_cast<std::size_t>(y), static_cast<std::size_t>(x), -k * Scalar(swap_sign(a.internal(w[0]), a.internal(w[1]))));
    }
    return c;
}

std::map<int, Terms> one_form_normal(const Alphabet& a, const NCForm& alpha) {
    std::map<int, Terms> out;
    for (const auto& [w, c] : alpha.terms) {
        if (w.size() == 1 && w[0] < 0) throw std::invalid_argument("one_form_normal: constant term in a 1-form");
        std::size_t pos = w.size(), count = 0;
        for (std::size_t r = 0; r < w.size(); ++r)
            if (is_d(w[r])) {
                pos = r;
                ++count;
            }
        if (count != 1) throw std::invalid_argument("one_form_normal: term of form degree " + std::to_string(count));
        std::vector<std::pair<int, int>> bd;
        for (int code : w) bd.push_back({a.internal(code), is_d(code) ? 1 : 0});
        const std::size_t shift = (pos + 1) % w.size();
        Scalar s = c;
        if (alpha.cyclic) s *= Scalar(rotation_sign(bd, shift));
        else if (shift != 0) throw std::invalid_argument("one_form_normal: non-cyclic form with d theta not last");
        Word r = rotate_word(w, shift);
        int b = letter_of(r.back());
        r.pop_back();
        if (r.empty()) r = constant_word(a.tgt[static_cast<std::size_t>(b)]);
        auto& t = out[b];
        auto it = t.find(r);
        if (it == t.end()) t.emplace(r, s);
        else {
            it->second += s;
            if (it->second.is_zero()) t.erase(it);
        }
    }
    return out;
}

VectorField solve_contraction(const Alphabet& a, const NCForm& omega, const NCForm& alpha, int degree) {
    auto cinv = inverse(omega_matrix(a, omega));
    if (!cinv) throw std::invalid_argument("symplectic form is degenerate");
    VectorField x;
    x.degree = degree;
    x.order_cap = alpha.order_cap;
    auto normal = one_form_normal(a, alpha);
    for (const auto& [key, v] : cinv->entries()) {
        auto it = normal.find(static_cast<int>(key.first));
        if (it == normal.end()) continue;
        auto& img = x.images[static_cast<int>(key.second)];
        for (const auto& [w, c] : it->second) {
            auto jt = img.find(w);
            if (jt == img.end()) img.emplace(w, c * v);
            else {
                jt->second += c * v;
                if (jt->second.is_zero()) img.erase(jt);
            }
        }
    }
    for (auto it = x.images.begin(); it != x.images.end();) it = it->second.empty() ? x.images.erase(it) : std::next(it);
    return x;
}

int function_degree(const Alphabet& a, const NCForm& f) {
    std::optional<int> deg;
    for (const auto& [w, c] : f.terms) {
        int d = word_bidegree(a, w).first;
        if (deg && *deg != d) throw std::invalid_argument("function is not homogeneous");
        deg = d;
    }
    return deg.value_or(0);
}

VectorField hamiltonian(const Alphabet& a, const NCForm& omega, const NCFunction& f) {
    NCForm cf = f.cyclic ? f : cyclic_image(a, f);
    return solve_contraction(a, omega, de_rham(a, cf), function_degree(a, cf));
}

NCFunction poisson_bracket(const Alphabet& a, const NCFunction& f, const NCFunction& g, const NCForm& omega) {
    NCForm cg = g.cyclic ? g : cyclic_image(a, g);
    return apply_field(a, hamiltonian(a, omega, f), cg);
}

CheckReport check_cyclicity(const AInfCategory& cat, int max_arity, std::size_t max_witnesses) {
    if (!cat.pairing) throw std::invalid_argument("check_cyclicity: category has no pairing");
    for (int k = 1; k <= max_arity; ++k)
        if (!cat.known(k)) throw TruncationError("truncation: cyclicity " + std::to_string(max_arity) + " not checkable");
    Alphabet a = Alphabet::of(cat);
    const int cap = max_arity + 1;
    NCForm omega = omega_from_pairing(a, *cat.pairing, cap);
    VectorField q = category_to_vectorfield(cat, max_arity);
    NCForm l = lie_derivative(a, q, omega);
    CheckReport report;
    for (const auto& [w, c] : l.terms) {
        int n = word_order(w) - 1;
        if (n < 1 || n > max_arity) continue;
        report.pass = false;
        if (report.witnesses.size() >= max_witnesses) continue;
        Witness wit;
        wit.arity = n;
        for (int code : w) wit.tuple.push_back(letter_of(code));
        wit.text = "L_Q omega has (" + c.str() + ") " + word_str(a, w);
        report.witnesses.push_back(std::move(wit));
    }
    report.message = report.pass ? "b_n is cyclic up to arity " + std::to_string(max_arity)
                                 : "cyclicity fails: " + report.witnesses.front().text;
    return report;
}

NCFunction potential_from_category(const AInfCategory& cat, int order_cap) {
    if (!cat.pairing) throw std::invalid_argument("potential needs a cyclic pairing");
    Alphabet a = Alphabet::of(cat);
    int cap = order_cap;
    bool clamped = false;
    if (!cat.exact_above_cap && cat.arity_cap + 1 < cap) {
        cap = cat.arity_cap + 1;
        clamped = true;
    }
    NCForm omega = omega_from_pairing(a, *cat.pairing, cap);
    VectorField q = category_to_vectorfield(cat, cap - 1);
    NCForm alpha = contraction(a, q, omega);
    VectorField e = euler_field(a, cap);
    NCForm w;
    w.cyclic = true;
    w.order_cap = cap;
    for (int k = 1; k <= cap; ++k) {
        NCForm ak = alpha.order(k);
        if (ak.zero()) continue;
        w = w + scaled(contraction(a, e, ak), Scalar(1) / Scalar(k));
    }
    NCForm diff = de_rham(a, w) - alpha;
    if (!diff.zero()) {
        const auto& [bad, c] = *diff.terms.begin();
        throw std::invalid_argument("not cyclic: d W differs from iota_Q omega at " + word_str(a, bad) + " (arity " +
                                    std::to_string(word_order(bad) - 1) + ")");
    }
    w.truncated = clamped;
    return w;
}

AInfCategory category_from_potential(const AInfCategory& shape, const NCFunction& w) {
    if (!shape.pairing) throw std::invalid_argument("category_from_potential needs a cyclic pairing");
    Alphabet a = Alphabet::of(shape);
    NCForm omega = omega_from_pairing(a, *shape.pairing, w.order_cap);
    VectorField q = hamiltonian(a, omega, w);
    AInfCategory out = vectorfield_to_category(shape, q, w.order_cap - 1);
    out.exact_above_cap = false;
    return out;
}

bool is_reduced(const Alphabet& a, const NCForm& f) {
    for (const auto& [w, c] : f.terms)
        for (int code : w)
            if (code >= 0 && a.unit[static_cast<std::size_t>(letter_of(code))]) return false;
    return true;
}

Automorphism identity_automorphism(const Alphabet& a, int order_cap) {
    Automorphism id;
    id.order_cap = order_cap;
    for (std::size_t x = 0; x < a.size(); ++x) id.images[static_cast<int>(x)] = generator(static_cast<int>(x), order_cap).terms;
    return id;
}

Automorphism exp_field(const Alphabet& a, const VectorField& v, int order_cap) {
    for (const auto& [x, t] : v.images)
        for (const auto& [w, c] : t) {
            if (word_order(w) < 2) throw std::invalid_argument("exp_field: field must raise the order");
            if (c.modulus() != 0 && static_cast<std::uint64_t>(order_cap) >= c.modulus())
                throw FieldError("exp_field: exponential needs characteristic zero or p > order cap");
        }
    Automorphism out;
    out.order_cap = order_cap;
    VectorField vc = v;
    vc.order_cap = order_cap;
    for (std::size_t x = 0; x < a.size(); ++x) {
        NCForm term = generator(static_cast<int>(x), order_cap);
        NCForm sum = term;
        for (int k = 1; !term.zero(); ++k) {
            term = scaled(apply_field(a, vc, term), Scalar(1) / Scalar(k));
            sum = sum + term;
        }
        out.images[static_cast<int>(x)] = sum.terms;
    }
    return out;
}

Automorphism hamiltonian_exp(const Alphabet& a, const NCFunction& s, const NCForm& omega, int order_cap) {
    for (const auto& [w, c] : s.terms)
        if (word_order(w) < 3) throw std::invalid_argument("hamiltonian_exp: S must have order >= 3");
    NCForm om = omega;
    om.order_cap = order_cap;
    NCForm sc = s;
    sc.order_cap = order_cap;
    return exp_field(a, hamiltonian(a, om, sc), order_cap);
}

Automorphism compose(const Alphabet& a, const Automorphism& f, const Automorphism& g) {
    Automorphism out;
    out.order_cap = std::min(f.order_cap, g.order_cap);
    for (std::size_t x = 0; x < a.size(); ++x) {
        int xi = static_cast<int>(x);
        NCForm gx;
        gx.order_cap = out.order_cap;
        auto it = g.images.find(xi);
        gx.terms = it == g.images.end() ? generator(xi, out.order_cap).terms : it->second;
        out.images[xi] = substitute(a, f, gx).terms;
    }
    return out;
}

}  // namespace twocy
