#include <functional>

#include "twocy/dgcat.hpp"

namespace twocy {

std::vector<int> default_weights(const DGQuiverAlgebra& alg) {
    std::vector<int> w;
    for (int d : alg.gens.degree) w.push_back(1 - d);
    return w;
}

namespace {

int path_weight(const Path& p, const std::vector<int>& w) {
    int s = 0;
    for (int a : p.arrows) s += w[static_cast<std::size_t>(a)];
    return s;
}

std::vector<int> resolve_weights(const DGQuiverAlgebra& alg, const std::vector<int>& weights) {
    auto w = weights.empty() ? default_weights(alg) : weights;
    if (w.size() != alg.gens.quiver.arrows.size()) throw std::invalid_argument("one weight per arrow is required");
    return w;
}

}  // namespace

std::vector<int> path_category_weights(const DGQuiverAlgebra& alg, int max_weight, const std::vector<int>& weights) {
    auto w = resolve_weights(alg, weights);
    std::vector<int> out;
    for (const auto& p : enumerate_paths(alg.gens.quiver, w, max_weight)) out.push_back(path_weight(p, w));
    return out;
}

AInfCategory path_category(const DGQuiverAlgebra& alg, int max_weight, const std::vector<int>& weights) {
    if (!alg.relations.empty()) throw std::invalid_argument("path_category needs a free dg path algebra (no relations)");
    const Quiver& q = alg.gens.quiver;
    auto w = resolve_weights(alg, weights);
    auto paths = enumerate_paths(q, w, max_weight);
    std::map<Path, int> index;
    AInfCategory cat;
    cat.objects = q.vertices;
    for (const auto& p : paths) {
        index[p] = static_cast<int>(cat.basis.size());
        cat.basis.push_back({path_str(q, p), p.src, p.tgt, alg.path_degree(p)});
    }
    for (std::size_t v = 0; v < q.vertices.size(); ++v) cat.units[static_cast<int>(v)] = index.at(Path::idempotent(static_cast<int>(v)));
    for (const auto& p : paths) {
        int x = index.at(p);
        for (const auto& [r, c] : alg.d(p)) {
            if (path_weight(r, w) != path_weight(p, w)) throw std::invalid_argument("differential is not weight homogeneous");
            cat.add_op({x}, index.at(r), -c);
        }
    }
    for (const auto& p : paths)
        for (const auto& r : paths) {
            if (!composable(p, r) || path_weight(p, w) + path_weight(r, w) > max_weight) continue;
            cat.add_op({index.at(p), index.at(r)}, index.at(concat(p, r)), parity_sign(alg.path_degree(p)));
        }
    cat.arity_cap = 2;
    cat.exact_above_cap = true;
    return cat;
}

AInfCategory bar_dual_category(const AInfCategory& a, const std::vector<int>& letter_weight, int max_weight) {
    if (a.units.size() != a.objects.size()) throw std::invalid_argument("bar dual needs a unit at every object");
    for (const auto& [n, t] : a.ops)
        if (n >= 3 && !t.empty()) throw std::invalid_argument("bar dual expects a dg category");
    if (letter_weight.size() != a.basis.size()) throw std::invalid_argument("one weight per basis element is required");
    std::vector<bool> is_unit(a.basis.size(), false);
    for (const auto& [o, e] : a.units) is_unit[static_cast<std::size_t>(e)] = true;
    std::vector<int> letters;
    for (std::size_t x = 0; x < a.basis.size(); ++x)
        if (!is_unit[x]) {
            if (letter_weight[x] <= 0) throw std::invalid_argument("augmentation ideal elements need positive weight");
            letters.push_back(static_cast<int>(x));
        }

    AInfCategory out;
    out.field = a.field;
    out.objects = a.objects;
    std::map<std::vector<int>, int> index;
    auto word_degree = [&](const std::vector<int>& w) {
        int d = 0;
        for (int x : w) d += 1 - a.basis[static_cast<std::size_t>(x)].degree;
        return d;
    };
    for (std::size_t o = 0; o < a.objects.size(); ++o) {
        index[{static_cast<int>(o) - static_cast<int>(a.objects.size())}] = static_cast<int>(out.basis.size());
        out.units[static_cast<int>(o)] = static_cast<int>(out.basis.size());
        out.basis.push_back({"1_" + a.objects[o], static_cast<int>(o), static_cast<int>(o), 0});
    }
    // Words in x-order, composable as x_1 x_2 ... x_n, by increasing length.
    std::vector<std::pair<std::vector<int>, int>> frontier;
    for (int x : letters)
        if (letter_weight[static_cast<std::size_t>(x)] <= max_weight) frontier.push_back({{x}, letter_weight[static_cast<std::size_t>(x)]});
    while (!frontier.empty()) {
        std::vector<std::pair<std::vector<int>, int>> next;
        for (const auto& [w, wt] : frontier) {
            std::string label = "[";
            for (std::size_t k = 0; k < w.size(); ++k) label += (k ? "|" : "") + a.basis[static_cast<std::size_t>(w[k])].label;
            label += "]";
            const auto& first = a.basis[static_cast<std::size_t>(w.front())];
            const auto& last = a.basis[static_cast<std::size_t>(w.back())];
            index[w] = static_cast<int>(out.basis.size());
            out.basis.push_back({label, last.src, first.tgt, word_degree(w)});
            for (int y : letters) {
                int nw = wt + letter_weight[static_cast<std::size_t>(y)];
                if (nw > max_weight || a.basis[static_cast<std::size_t>(y)].tgt != last.src) continue;
                auto u = w;
                u.push_back(y);
                next.push_back({std::move(u), nw});
            }
        }
        frontier = std::move(next);
    }

    // Q on letters, dual to the bar differential.
    std::map<int, std::map<std::vector<int>, Scalar>> Q;
    for (const auto& [n, table] : a.ops)
        for (const auto& [t, v] : table) {
            bool augmented = true;
            for (int x : t)
                if (is_unit[static_cast<std::size_t>(x)]) augmented = false;
            if (!augmented) continue;
            for (const auto& [z, c] : v) {
                if (is_unit[static_cast<std::size_t>(z)]) throw std::invalid_argument("augmentation ideal is not closed under the operations");
                auto& entry = Q[z][t];
                entry += c;
            }
        }
    // Koszul derivation on words; m_1 = Q, b_1 = -Q.
    for (const auto& [w, wi] : index) {
        if (w.size() == 1 && w[0] < 0) continue;
        int prefix = 0;
        for (std::size_t r = 0; r < w.size(); ++r) {
            auto it = Q.find(w[r]);
            if (it != Q.end()) {
                for (const auto& [t, c] : it->second) {
                    if (c.is_zero()) continue;
                    std::vector<int> u(w.begin(), w.begin() + static_cast<long>(r));
                    u.insert(u.end(), t.begin(), t.end());
                    u.insert(u.end(), w.begin() + static_cast<long>(r) + 1, w.end());
                    auto jt = index.find(u);
                    if (jt == index.end()) throw std::logic_error("differential leaves the weight truncation");
                    out.add_op({wi}, jt->second, -(parity_sign(prefix) * c));
                }
            }
            prefix += 1 - a.basis[static_cast<std::size_t>(w[r])].degree;
        }
    }
    // b_2(w1, w2) = (-1)^{|w1|} w1 w2.
    std::vector<std::pair<std::vector<int>, int>> words(index.begin(), index.end());
    std::map<int, int> weight_of;
    for (const auto& [w, wi] : words) {
        int s = 0;
        if (!(w.size() == 1 && w[0] < 0))
            for (int x : w) s += letter_weight[static_cast<std::size_t>(x)];
        weight_of[wi] = s;
    }
    for (const auto& [w1, i1] : words)
        for (const auto& [w2, i2] : words) {
            const auto& b1 = out.basis[static_cast<std::size_t>(i1)];
            const auto& b2 = out.basis[static_cast<std::size_t>(i2)];
            if (b1.src != b2.tgt || weight_of[i1] + weight_of[i2] > max_weight) continue;
            bool u1 = w1.size() == 1 && w1[0] < 0, u2 = w2.size() == 1 && w2[0] < 0;
            std::vector<int> w;
            if (u1)
                w = w2;
            else if (u2)
                w = w1;
            else {
                w = w1;
                w.insert(w.end(), w2.begin(), w2.end());
            }
            out.add_op({i1, i2}, index.at(w), parity_sign(b1.degree));
        }
    out.arity_cap = 2;
    out.exact_above_cap = true;
    return out;
}

}  // namespace twocy
