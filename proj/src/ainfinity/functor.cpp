#include <functional>

#include "internal.hpp"
#include "twocy/ainfinity.hpp"

namespace twocy {

const Vec* AInfMorphism::comp(const Tuple& t) const {
    auto it = comps.find(static_cast<int>(t.size()));
    if (it == comps.end()) return nullptr;
    auto jt = it->second.find(t);
    return jt == it->second.end() ? nullptr : &jt->second;
}

void AInfMorphism::add_comp(const Tuple& t, int out, const Scalar& c) {
    if (c.is_zero()) return;
    auto& table = comps[static_cast<int>(t.size())];
    auto& v = table[t];
    vec_add(v, out, c);
    if (v.empty()) table.erase(t);
}

void AInfMorphism::validate() const {
    if (!source || !target) throw std::invalid_argument("functor without source or target");
    if (object_map.size() != source->objects.size()) throw std::invalid_argument("object map has wrong length");
    for (int o : object_map)
        if (o < 0 || o >= static_cast<int>(target->objects.size())) throw std::invalid_argument("object map out of range");
    for (const auto& [n, table] : comps) {
        if (n > arity_cap && !table.empty()) throw std::invalid_argument("functor component stored above its cap");
        for (const auto& [t, v] : table) {
            if (!source->composable(t)) throw std::invalid_argument("functor component on non-composable tuple");
            int sdeg = 0;
            for (int x : t) sdeg += source->shifted(x);
            int tgt = object_map[static_cast<std::size_t>(source->basis[static_cast<std::size_t>(t.front())].tgt)];
            int src = object_map[static_cast<std::size_t>(source->basis[static_cast<std::size_t>(t.back())].src)];
            for (const auto& [y, c] : v) {
                const auto& b = target->basis[static_cast<std::size_t>(y)];
                if (b.src != src || b.tgt != tgt) throw std::invalid_argument("functor component lands in the wrong hom space");
                if (target->shifted(y) != sdeg) throw std::invalid_argument("functor component is not of degree 0");
            }
        }
    }
}

AInfMorphism identity_functor(std::shared_ptr<const AInfCategory> cat) {
    AInfMorphism f;
    f.source = cat;
    f.target = cat;
    for (std::size_t o = 0; o < cat->objects.size(); ++o) f.object_map.push_back(static_cast<int>(o));
    for (std::size_t x = 0; x < cat->basis.size(); ++x) f.add_comp({static_cast<int>(x)}, static_cast<int>(x), Scalar(1));
    f.arity_cap = 1;
    f.exact_above_cap = true;
    return f;
}

namespace {

using Preimages = std::map<int, std::vector<std::pair<const Tuple*, Scalar>>>;

Preimages preimages(const std::map<int, OpTable>& comps, std::size_t max_len) {
    Preimages pre;
    for (const auto& [n, table] : comps) {
        if (static_cast<std::size_t>(n) > max_len) continue;
        for (const auto& [t, v] : table)
            for (const auto& [y, c] : v) pre[y].push_back({&t, c});
    }
    return pre;
}

// acc[x] += sum over outer entries (y_1..y_l -> out) and factorizations of x
// into preimage tuples of y_1 .. y_l.
void substitute(const AInfCategory& src, const OpTable& outer, const Preimages& pre, std::size_t max_len,
                std::map<Tuple, Vec>& acc, const Scalar& scale) {
    Tuple cur;
    for (const auto& [ys, out] : outer) {
        std::function<void(std::size_t, const Scalar&)> rec = [&](std::size_t j, const Scalar& coeff) {
            if (j == ys.size()) {
                vec_axpy(acc[cur], scale * coeff, out);
                return;
            }
            auto it = pre.find(ys[j]);
            if (it == pre.end()) return;
            for (const auto& [t, c] : it->second) {
                if (cur.size() + t->size() + (ys.size() - j - 1) > max_len) continue;
                if (!cur.empty() && src.basis[static_cast<std::size_t>(cur.back())].src != src.basis[static_cast<std::size_t>(t->front())].tgt)
                    continue;
                std::size_t mark = cur.size();
                cur.insert(cur.end(), t->begin(), t->end());
                rec(j + 1, coeff * c);
                cur.resize(mark);
            }
        };
        cur.clear();
        rec(0, Scalar(1));
    }
}

}  // namespace

AInfMorphism compose(const AInfMorphism& f, const AInfMorphism& g) {
    auto same_shape = [](const AInfCategory& x, const AInfCategory& y) {
        if (x.objects != y.objects || x.basis.size() != y.basis.size()) return false;
        for (std::size_t i = 0; i < x.basis.size(); ++i)
            if (x.basis[i].label != y.basis[i].label) return false;
        return true;
    };
    if (!g.target || !f.source || (g.target != f.source && !same_shape(*g.target, *f.source)))
        throw std::invalid_argument("compose: target of g is not the source of f");
    AInfMorphism h;
    h.source = g.source;
    h.target = f.target;
    for (int o : g.object_map) h.object_map.push_back(f.object_map[static_cast<std::size_t>(o)]);
    h.exact_above_cap = f.exact_above_cap && g.exact_above_cap;
    int cap;
    if (h.exact_above_cap)
        cap = f.arity_cap * g.arity_cap;
    else if (f.exact_above_cap)
        cap = g.arity_cap;
    else if (g.exact_above_cap)
        cap = f.arity_cap;
    else
        cap = std::min(f.arity_cap, g.arity_cap);
    h.arity_cap = cap;
    auto pre = preimages(g.comps, static_cast<std::size_t>(cap));
    std::map<Tuple, Vec> acc;
    for (const auto& [r, table] : f.comps) substitute(*g.source, table, pre, static_cast<std::size_t>(cap), acc, Scalar(1));
    for (auto& [t, v] : acc)
        if (!v.empty()) h.comps[static_cast<int>(t.size())][t] = std::move(v);
    return h;
}

CheckReport check_functor(const AInfMorphism& f, int max_arity, std::size_t max_witnesses) {
    const AInfCategory& src = *f.source;
    const AInfCategory& tgt = *f.target;
    for (int k = 1; k <= max_arity; ++k)
        if (!src.known(k) || !tgt.known(k) || !f.known(k))
            throw TruncationError("truncation: relation " + std::to_string(max_arity) + " not checkable");
    std::map<Tuple, Vec> acc;
    for (int n = 1; n <= max_arity; ++n) {
        for (int s = 1; s <= n; ++s) {
            int u = n - s + 1;
            auto in = src.ops.find(s);
            auto out = f.comps.find(u);
            if (in == src.ops.end() || out == f.comps.end()) continue;
            detail::accumulate_insertions(src, in->second, out->second, static_cast<std::size_t>(u), acc, Scalar(1));
        }
    }
    auto pre = preimages(f.comps, static_cast<std::size_t>(max_arity));
    for (const auto& [l, table] : tgt.ops)
        if (l <= max_arity) substitute(src, table, pre, static_cast<std::size_t>(max_arity), acc, Scalar(-1));
    CheckReport report;
    for (int n = 1; n <= max_arity; ++n) {
        std::map<Tuple, Vec> at_n;
        for (auto& [t, v] : acc)
            if (static_cast<int>(t.size()) == n && !v.empty()) at_n.emplace(t, v);
        detail::collect_witnesses(src, n, at_n, report, max_witnesses, "functor relation");
    }
    if (report.pass) report.message = "functor relations hold exactly up to arity " + std::to_string(max_arity);
    return report;
}

}  // namespace twocy
