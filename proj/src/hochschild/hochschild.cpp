#include "twocy/hochschild.hpp"

#include <set>

#include "twocy/koszul.hpp"
#include "twocy/sparse.hpp"

namespace twocy {

namespace {

void add_to(Chain& c, const Tuple& t, const Scalar& s) {
    if (s.is_zero()) return;
    auto it = c.find(t);
    if (it == c.end()) {
        c.emplace(t, s);
        return;
    }
    it->second += s;
    if (it->second.is_zero()) c.erase(it);
}

long shifted_sum(const AInfCategory& cat, const Tuple& t, std::size_t from, std::size_t to) {
    long s = 0;
    for (std::size_t q = from; q < to; ++q) s += cat.shifted(t[q]);
    return s;
}

std::vector<std::pair<int, int>> bidegrees(const AInfCategory& cat, const Tuple& t) {
    std::vector<std::pair<int, int>> bd;
    for (int x : t) bd.push_back({cat.shifted(x), 0});
    return bd;
}

// x ~ sign * rotate(x, k) with rotate(x, k) = (x_k, .., x_{n-1}, x_0, .., x_{k-1}).
int rotation_sign_of(const AInfCategory& cat, const Tuple& t, std::size_t k) {
    return swap_sign(shifted_sum(cat, t, 0, k), shifted_sum(cat, t, k, t.size()));
}

}  // namespace

int chain_degree(const AInfCategory& cat, const Tuple& t) { return static_cast<int>(shifted_sum(cat, t, 0, t.size())) + 1; }

bool cyclically_composable(const AInfCategory& cat, const Tuple& t) {
    if (t.empty() || !cat.composable(t)) return false;
    return cat.basis[static_cast<std::size_t>(t.back())].src == cat.basis[static_cast<std::size_t>(t.front())].tgt;
}

std::vector<Tuple> hochschild_basis(const AInfCategory& cat, int n) {
    std::vector<Tuple> out;
    for (auto& t : cat.composable_tuples(n))
        if (cyclically_composable(cat, t)) out.push_back(std::move(t));
    return out;
}

Chain cyclic_rotate(const AInfCategory& cat, const Chain& c) {
    Chain out;
    for (const auto& [t, s] : c) {
        std::size_t n = t.size();
        add_to(out, rotate_word(t, n - 1), s * Scalar(rotation_sign_of(cat, t, n - 1)));
    }
    return out;
}

Chain hochschild_b(const AInfCategory& cat, const Chain& c, int max_length) {
    for (int k = 1; k <= max_length; ++k)
        if (!cat.known(k)) throw TruncationError("truncation: Hochschild window " + std::to_string(max_length) + " needs b_" + std::to_string(k));
    Chain out;
    for (const auto& [t, s] : c) {
        const std::size_t n = t.size();
        for (const auto& [k, table] : cat.ops) {
            if (static_cast<std::size_t>(k) > n || table.empty()) continue;
            for (std::size_t start = 0; start < n; ++start) {
                Tuple rot = t;
                Scalar sign = s;
                std::size_t pos = start;
                if (start + static_cast<std::size_t>(k) > n) {
                    rot = rotate_word(t, start);
                    sign *= Scalar(rotation_sign_of(cat, t, start));
                    pos = 0;
                } else {
                    sign *= parity_sign(shifted_sum(cat, t, 0, start));
                }
                Tuple window(rot.begin() + static_cast<long>(pos), rot.begin() + static_cast<long>(pos) + k);
                auto it = table.find(window);
                if (it == table.end()) continue;
                for (const auto& [y, v] : it->second) {
                    Tuple r(rot.begin(), rot.begin() + static_cast<long>(pos));
                    r.push_back(y);
                    r.insert(r.end(), rot.begin() + static_cast<long>(pos) + k, rot.end());
                    add_to(out, r, sign * v);
                }
            }
        }
    }
    return out;
}

Chain connes_B(const AInfCategory& cat, const Chain& c, int max_length) {
    Chain out;
    for (const auto& [t, s] : c) {
        const std::size_t n = t.size();
        if (static_cast<int>(n) + 1 > max_length) throw std::invalid_argument("insufficient window: B needs length " + std::to_string(n + 1));
        Chain inserted;
        for (std::size_t i = 0; i < n; ++i) {
            Tuple rot = rotate_word(t, i);
            Scalar sign = s * Scalar(rotation_sign_of(cat, t, i));
            int o = cat.basis[static_cast<std::size_t>(rot.front())].tgt;
            auto u = cat.units.find(o);
            if (u == cat.units.end()) throw std::invalid_argument("non-unital category: no unit at object " + cat.objects[static_cast<std::size_t>(o)]);
            Tuple ins{u->second};
            ins.insert(ins.end(), rot.begin(), rot.end());
            add_to(inserted, ins, sign);
        }
        for (const auto& [u, v] : inserted) add_to(out, u, v);
        for (const auto& [u, v] : cyclic_rotate(cat, inserted)) add_to(out, u, -v);
    }
    return out;
}

Chain cyclic_class(const AInfCategory& cat, const Chain& c) {
    Chain out;
    for (const auto& [t, s] : c) {
        auto rep = cyclic_canonical(t, bidegrees(cat, t));
        if (!rep) continue;
        add_to(out, rotate_word(t, rep->shift), s * Scalar(rep->sign));
    }
    return out;
}

std::vector<Tuple> cyclic_basis(const AInfCategory& cat, int n) {
    std::set<Tuple> reps;
    for (const auto& t : hochschild_basis(cat, n))
        for (const auto& [u, s] : cyclic_class(cat, Chain{{t, Scalar(1)}})) reps.insert(u);
    return {reps.begin(), reps.end()};
}

namespace {

struct Complex {
    // (length, degree) -> basis
    std::map<std::pair<int, int>, std::vector<Tuple>> blocks;
};

Complex build_complex(const AInfCategory& cat, int max_length, bool cyclic) {
    Complex cx;
    for (int n = 1; n <= max_length; ++n)
        for (const auto& t : cyclic ? cyclic_basis(cat, n) : hochschild_basis(cat, n))
            cx.blocks[{n, chain_degree(cat, t)}].push_back(t);
    return cx;
}

// Rank of b from the chains `src` into the span of `dst`.
std::size_t rank_between(const AInfCategory& cat, const std::vector<Tuple>& src, const std::vector<Tuple>& dst, int max_length, bool cyclic) {
    if (src.empty() || dst.empty()) return 0;
    std::map<Tuple, std::size_t> row;
    for (const auto& t : dst) row.emplace(t, row.size());
    SparseMatrix m(dst.size(), src.size());
    for (std::size_t j = 0; j < src.size(); ++j) {
        Chain img = hochschild_b(cat, Chain{{src[j], Scalar(1)}}, max_length);
        if (cyclic) img = cyclic_class(cat, img);
        for (const auto& [u, v] : img) {
            auto it = row.find(u);
            if (it == row.end()) throw std::logic_error("Hochschild differential leaves the window");
            m.set(it->second, j, v);
        }
    }
    return rank(m);
}

std::map<int, int> homology_up_to(const AInfCategory& cat, const Complex& cx, int cutoff, int max_length, bool cyclic) {
    std::map<int, std::vector<Tuple>> by_deg;
    for (const auto& [key, ts] : cx.blocks)
        if (key.first <= cutoff) by_deg[key.second].insert(by_deg[key.second].end(), ts.begin(), ts.end());
    std::map<int, std::size_t> rk;  // rank of b out of degree d
    for (const auto& [d, ts] : by_deg) {
        auto it = by_deg.find(d + 1);
        rk[d] = it == by_deg.end() ? 0 : rank_between(cat, ts, it->second, max_length, cyclic);
    }
    std::map<int, int> dims;
    for (const auto& [d, ts] : by_deg) {
        std::size_t in = rk.count(d - 1) ? rk[d - 1] : 0;
        int h = static_cast<int>(ts.size() - rk[d] - in);
        if (h) dims[d] = h;
    }
    return dims;
}

}  // namespace

WindowedHomology windowed_homology(const AInfCategory& cat, int max_length, int margin, bool cyclic) {
    if (margin < 1) throw std::invalid_argument("windowed homology needs a margin of at least 1");
    if (max_length < 1) throw std::invalid_argument("windowed homology needs max_length >= 1");
    auto rel = check_relations(cat, max_length);
    if (!rel.pass) throw std::invalid_argument("category fails its A-infinity relations: " + rel.message);
    WindowedHomology wh;
    wh.max_length = max_length;
    wh.margin = margin;
    wh.cyclic = cyclic;
    Complex cx = build_complex(cat, max_length, cyclic);
    for (const auto& [key, ts] : cx.blocks) wh.chain_dims[key] = static_cast<int>(ts.size());
    wh.dims = homology_up_to(cat, cx, max_length, max_length, cyclic);
    std::set<int> degrees;
    for (const auto& [d, h] : wh.dims) degrees.insert(d);
    std::vector<std::map<int, int>> lower;
    for (int cut = std::max(1, max_length - margin); cut < max_length; ++cut) {
        lower.push_back(homology_up_to(cat, cx, cut, max_length, cyclic));
        for (const auto& [d, h] : lower.back()) degrees.insert(d);
    }
    for (int d : degrees) {
        bool st = true;
        auto get = [d](const std::map<int, int>& m) {
            auto it = m.find(d);
            return it == m.end() ? 0 : it->second;
        };
        for (const auto& l : lower) st = st && get(l) == get(wh.dims);
        wh.stable[d] = st;
    }

    wh.length_graded = true;
    for (const auto& [k, t] : cat.ops)
        if (k != 2 && !t.empty()) wh.length_graded = false;
    if (wh.length_graded) {
        auto block = [&](int n, int d) -> const std::vector<Tuple>& {
            static const std::vector<Tuple> none;
            auto it = cx.blocks.find({n, d});
            return it == cx.blocks.end() ? none : it->second;
        };
        for (const auto& [key, ts] : cx.blocks) {
            auto [n, d] = key;
            if (n > max_length - margin) continue;
            std::size_t out = rank_between(cat, ts, block(n - 1, d + 1), max_length, cyclic);
            std::size_t in = rank_between(cat, block(n + 1, d - 1), ts, max_length, cyclic);
            int h = static_cast<int>(ts.size() - out - in);
            if (h) wh.by_length[key] = h;
        }
    }
    return wh;
}

}  // namespace twocy
