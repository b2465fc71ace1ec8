#include "twocy/quiver.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace twocy {

int Quiver::vertex_index(const std::string& label) const {
    for (std::size_t i = 0; i < vertices.size(); ++i)
        if (vertices[i] == label) return static_cast<int>(i);
    throw std::invalid_argument("unknown vertex '" + label + "'");
}

int Quiver::arrow_index(const std::string& id) const {
    for (std::size_t i = 0; i < arrows.size(); ++i)
        if (arrows[i].id == id) return static_cast<int>(i);
    throw std::invalid_argument("unknown arrow '" + id + "'");
}

void Quiver::validate() const {
    std::set<std::string> seen_v(vertices.begin(), vertices.end());
    if (seen_v.size() != vertices.size()) throw std::invalid_argument("duplicate vertex label");
    std::set<std::string> ids;
    const int n = static_cast<int>(vertices.size());
    for (const auto& a : arrows) {
        if (!ids.insert(a.id).second) throw std::invalid_argument("duplicate arrow id '" + a.id + "'");
        if (a.src < 0 || a.src >= n || a.tgt < 0 || a.tgt >= n)
            throw std::invalid_argument("arrow '" + a.id + "' has an endpoint outside the vertex set");
    }
    if (!star.empty()) {
        if (star.size() != arrows.size()) throw std::invalid_argument("involution has wrong length");
        for (std::size_t k = 0; k < star.size(); ++k) {
            int s = star[k];
            if (s < 0 || s >= static_cast<int>(arrows.size()) || star[static_cast<std::size_t>(s)] != static_cast<int>(k))
                throw std::invalid_argument("involution is not an involution");
            if (arrows[k].src != arrows[static_cast<std::size_t>(s)].tgt)
                throw std::invalid_argument("involution does not reverse arrows");
        }
    }
}

Quiver Quiver::jordan() { return {{"1"}, {{"a", 0, 0}}, {}}; }
Quiver Quiver::a2() { return {{"1", "2"}, {{"a", 0, 1}}, {}}; }
Quiver Quiver::loops(int g) {
    Quiver q{{"1"}, {}, {}};
    for (int i = 0; i < g; ++i) q.arrows.push_back({"a" + std::to_string(i + 1), 0, 0});
    return q;
}

void add_term(PathCombo& c, const Path& p, const Scalar& s) {
    if (s.is_zero()) return;
    auto it = c.find(p);
    if (it == c.end()) {
        c.emplace(p, s);
    } else {
        it->second += s;
        if (it->second.is_zero()) c.erase(it);
    }
}

bool composable(const Path& x, const Path& y) { return x.src == y.tgt; }

Path concat(const Path& x, const Path& y) {
    if (!composable(x, y)) throw std::invalid_argument("paths are not composable");
    Path p{x.tgt, y.src, x.arrows};
    p.arrows.insert(p.arrows.end(), y.arrows.begin(), y.arrows.end());
    return p;
}

std::string path_str(const Quiver& q, const Path& p) {
    if (p.arrows.empty()) return "e_" + q.vertices[static_cast<std::size_t>(p.src)];
    std::string s;
    for (std::size_t i = 0; i < p.arrows.size(); ++i) {
        if (i) s += ".";
        s += q.arrows[static_cast<std::size_t>(p.arrows[i])].id;
    }
    return s;
}

int DGQuiverAlgebra::path_degree(const Path& p) const {
    int d = 0;
    for (int a : p.arrows) d += gens.degree[static_cast<std::size_t>(a)];
    return d;
}

PathCombo DGQuiverAlgebra::d(const Path& p) const {
    PathCombo out;
    int prefix_degree = 0;
    for (std::size_t i = 0; i < p.arrows.size(); ++i) {
        int a = p.arrows[i];
        auto it = differential.find(a);
        if (it != differential.end()) {
            Scalar sign = parity_sign(prefix_degree);
            Path left{p.tgt, 0, {p.arrows.begin(), p.arrows.begin() + static_cast<long>(i)}};
            Path right{0, p.src, {p.arrows.begin() + static_cast<long>(i) + 1, p.arrows.end()}};
            for (const auto& [q, c] : it->second) {
                Path r{p.tgt, p.src, left.arrows};
                r.arrows.insert(r.arrows.end(), q.arrows.begin(), q.arrows.end());
                r.arrows.insert(r.arrows.end(), right.arrows.begin(), right.arrows.end());
                add_term(out, r, sign * c);
            }
        }
        prefix_degree += gens.degree[static_cast<std::size_t>(a)];
    }
    return out;
}

PathCombo DGQuiverAlgebra::d(const PathCombo& c) const {
    PathCombo out;
    for (const auto& [p, s] : c)
        for (const auto& [q, t] : d(p)) add_term(out, q, s * t);
    return out;
}

Quiver double_quiver(const Quiver& q) {
    Quiver d;
    d.vertices = q.vertices;
    const int n = static_cast<int>(q.arrows.size());
    d.arrows = q.arrows;
    for (const auto& a : q.arrows) d.arrows.push_back({a.id + "*", a.tgt, a.src});
    d.star.resize(static_cast<std::size_t>(2 * n));
    for (int k = 0; k < n; ++k) {
        d.star[static_cast<std::size_t>(k)] = k + n;
        d.star[static_cast<std::size_t>(k + n)] = k;
    }
    return d;
}

Scalar euler_form(const Quiver& q, const DimensionVector& d, const DimensionVector& e) {
    if (d.size() != q.vertices.size() || e.size() != q.vertices.size())
        throw std::invalid_argument("dimension vector length differs from vertex count");
    long v = 0;
    for (std::size_t i = 0; i < d.size(); ++i) v += d[i] * e[i];
    for (const auto& a : q.arrows) v -= d[static_cast<std::size_t>(a.src)] * e[static_cast<std::size_t>(a.tgt)];
    return Scalar(v);
}

std::vector<PathCombo> preprojective_relations(const Quiver& q) {
    const int n = static_cast<int>(q.arrows.size());
    std::vector<PathCombo> rel(q.vertices.size());
    for (int k = 0; k < n; ++k) {
        const auto& a = q.arrows[static_cast<std::size_t>(k)];
        // a a*: loop at t(a); a* a: loop at s(a).
        add_term(rel[static_cast<std::size_t>(a.tgt)], Path{a.tgt, a.tgt, {k, k + n}}, Scalar(1));
        add_term(rel[static_cast<std::size_t>(a.src)], Path{a.src, a.src, {k + n, k}}, Scalar(-1));
    }
    return rel;
}

DGQuiverAlgebra preprojective(const Quiver& q) {
    DGQuiverAlgebra alg;
    alg.gens.quiver = double_quiver(q);
    alg.gens.degree.assign(alg.gens.quiver.arrows.size(), 0);
    for (auto& r : preprojective_relations(q))
        if (!r.empty()) alg.relations.push_back(std::move(r));
    return alg;
}

DGQuiverAlgebra derived_preprojective(const Quiver& q) {
    DGQuiverAlgebra alg;
    alg.gens.quiver = double_quiver(q);
    alg.gens.degree.assign(alg.gens.quiver.arrows.size(), 0);
    auto rel = preprojective_relations(q);
    for (std::size_t i = 0; i < q.vertices.size(); ++i) {
        int idx = static_cast<int>(alg.gens.quiver.arrows.size());
        int v = static_cast<int>(i);
        alg.gens.quiver.arrows.push_back({"u_" + q.vertices[i], v, v});
        alg.gens.degree.push_back(-1);
        if (!rel[i].empty()) alg.differential[idx] = rel[i];
    }
    // u loops are not part of the involution.
    alg.gens.quiver.star.clear();
    return alg;
}

namespace {

void paths_of_length(const Quiver& q, int len, std::vector<Path>& out) {
    std::vector<Path> cur;
    for (std::size_t v = 0; v < q.vertices.size(); ++v) cur.push_back(Path::idempotent(static_cast<int>(v)));
    for (int l = 0; l < len; ++l) {
        std::vector<Path> next;
        for (const auto& p : cur)
            for (std::size_t a = 0; a < q.arrows.size(); ++a)
                if (q.arrows[a].tgt == p.src) {
                    Path r = p;
                    r.arrows.push_back(static_cast<int>(a));
                    r.src = q.arrows[a].src;
                    next.push_back(std::move(r));
                }
        cur = std::move(next);
    }
    out.insert(out.end(), cur.begin(), cur.end());
}

}  // namespace

DGReport check_dg(const DGQuiverAlgebra& alg, int max_length) {
    const auto& q = alg.gens.quiver;
    for (const auto& [a, img] : alg.differential) {
        const auto& arr = q.arrows[static_cast<std::size_t>(a)];
        for (const auto& [p, c] : img) {
            if (alg.path_degree(p) != alg.gens.degree[static_cast<std::size_t>(a)] + 1)
                return {false, "differential degree ≠ +1 on generator '" + arr.id + "'"};
            if (p.src != arr.src || p.tgt != arr.tgt)
                return {false, "differential of '" + arr.id + "' has mismatched endpoints"};
            for (std::size_t i = 0; i + 1 < p.arrows.size(); ++i)
                if (q.arrows[static_cast<std::size_t>(p.arrows[i])].src != q.arrows[static_cast<std::size_t>(p.arrows[i + 1])].tgt)
                    return {false, "differential of '" + arr.id + "' contains a non-composable path"};
        }
    }
    for (int len = 1; len <= max_length; ++len) {
        std::vector<Path> ps;
        paths_of_length(q, len, ps);
        for (const auto& p : ps) {
            auto dd = alg.d(alg.d(p));
            if (!dd.empty()) return {false, "d^2 != 0 on path " + path_str(q, p)};
        }
    }
    return {};
}

std::vector<Path> enumerate_paths(const Quiver& q, const std::vector<int>& weights, int max_weight) {
    for (int w : weights)
        if (w <= 0) throw std::invalid_argument("path weights must be positive");
    std::vector<Path> out;
    std::vector<std::pair<Path, int>> frontier;
    for (std::size_t v = 0; v < q.vertices.size(); ++v) {
        out.push_back(Path::idempotent(static_cast<int>(v)));
        frontier.emplace_back(Path::idempotent(static_cast<int>(v)), 0);
    }
    while (!frontier.empty()) {
        std::vector<std::pair<Path, int>> next;
        for (const auto& [p, w] : frontier)
            for (std::size_t a = 0; a < q.arrows.size(); ++a) {
                int nw = w + weights[a];
                if (q.arrows[a].tgt != p.src || nw > max_weight) continue;
                Path r = p;
                r.arrows.push_back(static_cast<int>(a));
                r.src = q.arrows[a].src;
                out.push_back(r);
                next.emplace_back(std::move(r), nw);
            }
        frontier = std::move(next);
    }
    std::sort(out.begin(), out.end(), [](const Path& x, const Path& y) {
        if (x.arrows.size() != y.arrows.size()) return x.arrows.size() < y.arrows.size();
        return x < y;
    });
    return out;
}

}  // namespace twocy
