#include <algorithm>
#include <functional>

#include "twocy/ainfinity.hpp"
#include "twocy/sparse.hpp"

namespace twocy {

namespace {

// d = m_1 = -b_1 on a single basis element.
Vec differential(const AInfCategory& cat, int x) {
    const Vec* b = cat.op({x});
    return b ? vec_scaled(*b, Scalar(-1)) : Vec{};
}

Vec apply_map(const std::vector<Vec>& m, const Vec& v) {
    Vec out;
    for (const auto& [k, c] : v) vec_axpy(out, c, m[static_cast<std::size_t>(k)]);
    return out;
}

Vec apply_d(const AInfCategory& cat, const Vec& v) {
    Vec out;
    for (const auto& [k, c] : v) vec_axpy(out, c, differential(cat, k));
    return out;
}

std::string rep_label(const AInfCategory& cat, const SparseVec& z, std::size_t free_pos, const std::vector<int>& block) {
    if (z.size() == 1 && z.begin()->second.is_one()) return cat.basis[static_cast<std::size_t>(block[z.begin()->first])].label;
    return "[" + cat.basis[static_cast<std::size_t>(block[free_pos])].label + "]";
}

}  // namespace

TransferData auto_transfer(const AInfCategory& cat, TransferChoice choice) {
    TransferData td;
    td.proj.assign(cat.basis.size(), {});
    td.homotopy.assign(cat.basis.size(), {});
    for (std::size_t i = 0; i < cat.objects.size(); ++i) {
        for (std::size_t j = 0; j < cat.objects.size(); ++j) {
            std::map<int, std::vector<int>> by_deg;
            for (int x : cat.hom(static_cast<int>(i), static_cast<int>(j)))
                by_deg[cat.basis[static_cast<std::size_t>(x)].degree].push_back(x);
            if (by_deg.empty()) continue;
            if (choice == TransferChoice::rightmost)
                for (auto& [k, v] : by_deg) std::reverse(v.begin(), v.end());
            auto block = [&](int k) -> const std::vector<int>& {
                static const std::vector<int> none;
                auto it = by_deg.find(k);
                return it == by_deg.end() ? none : it->second;
            };
            auto pos_in = [](const std::vector<int>& blk) {
                std::map<int, std::size_t> m;
                for (std::size_t p = 0; p < blk.size(); ++p) m[blk[p]] = p;
                return m;
            };
            // D_k : V_k -> V_{k+1} and its leftmost pivots, for every degree present.
            std::map<int, SparseMatrix> D;
            std::map<int, std::vector<std::size_t>> pivots;
            std::map<int, std::vector<SparseVec>> rref;
            int lo = by_deg.begin()->first, hi = by_deg.rbegin()->first;
            for (int k = lo - 1; k <= hi; ++k) {
                const auto& src = block(k);
                const auto& dst = block(k + 1);
                auto dpos = pos_in(dst);
                SparseMatrix m(dst.size(), src.size());
                for (std::size_t c = 0; c < src.size(); ++c)
                    for (const auto& [y, v] : differential(cat, src[c])) {
                        auto it = dpos.find(y);
                        if (it == dpos.end()) throw std::invalid_argument("b1 leaves its hom space or degree");
                        m.set(it->second, c, v);
                    }
                rref[k] = rref_rows(m, &pivots[k]);
                D.emplace(k, std::move(m));
            }
            for (int k = lo; k <= hi; ++k) {
                const auto& V = block(k);
                if (V.empty()) continue;
                const std::size_t n = V.size();
                // L_k: standard vectors at pivot columns of D_k.
                std::vector<SparseVec> L;
                for (auto c : pivots[k]) L.push_back({{c, Scalar(1)}});
                // B_k: images of the pivot columns of D_{k-1}.
                std::vector<SparseVec> B;
                std::vector<std::size_t> B_pre;  // position in V_{k-1}
                {
                    auto cols = D.at(k - 1).transpose().row_vectors();
                    for (auto c : pivots[k - 1]) {
                        B.push_back(cols[c]);
                        B_pre.push_back(c);
                    }
                }
                // Z_k: RREF kernel vectors of D_k; H reps complement B inside Z.
                std::vector<bool> is_piv(n, false);
                for (auto p : pivots[k]) is_piv[p] = true;
                Echelon span;
                for (const auto& b : B) span.insert(b);
                std::vector<SparseVec> H;
                std::vector<std::size_t> H_free;
                for (std::size_t f = 0; f < n; ++f) {
                    if (is_piv[f]) continue;
                    SparseVec z{{f, Scalar(1)}};
                    const auto& rows = rref[k];
                    for (std::size_t r = 0; r < rows.size(); ++r) {
                        auto it = rows[r].find(f);
                        if (it != rows[r].end()) z[pivots[k][r]] = -it->second;
                    }
                    if (span.insert(z)) {
                        H.push_back(z);
                        H_free.push_back(f);
                    }
                }
                if (L.size() + H.size() + B.size() != n) throw std::logic_error("transfer decomposition has wrong dimension");
                // Change of basis V = L + H + B.
                SparseMatrix M(n, n);
                std::size_t col = 0;
                for (const auto* group : {&L, &H, &B}) {
                    for (const auto& v : *group) {
                        for (const auto& [r, c] : v) M.set(r, col, c);
                        ++col;
                    }
                }
                auto Minv = inverse(M);
                if (!Minv) throw std::logic_error("transfer basis is singular");
                std::vector<int> rep_index;
                for (std::size_t h = 0; h < H.size(); ++h) {
                    BasisElem b = cat.basis[static_cast<std::size_t>(V[H_free[h]])];
                    b.label = rep_label(cat, H[h], H_free[h], V);
                    rep_index.push_back(static_cast<int>(td.reps.size()));
                    td.reps.push_back(b);
                    Vec inc;
                    for (const auto& [r, c] : H[h]) vec_add(inc, V[r], c);
                    td.incl.push_back(inc);
                }
                auto coords = Minv->transpose().row_vectors();  // coords[c] = coordinates of e_c
                const auto& Vprev = block(k - 1);
                for (std::size_t c = 0; c < n; ++c) {
                    Vec p, h;
                    for (const auto& [r, x] : coords[c]) {
                        if (r < L.size()) continue;
                        if (r < L.size() + H.size()) {
                            vec_add(p, rep_index[r - L.size()], x);
                        } else {
                            std::size_t bj = r - L.size() - H.size();
                            vec_add(h, Vprev[B_pre[bj]], x);
                        }
                    }
                    td.proj[static_cast<std::size_t>(V[c])] = p;
                    td.homotopy[static_cast<std::size_t>(V[c])] = h;
                }
            }
        }
    }
    // Labels must be unique; qualify duplicates by their position.
    std::map<std::string, int> seen;
    for (auto& r : td.reps) ++seen[r.label];
    for (std::size_t k = 0; k < td.reps.size(); ++k)
        if (seen[td.reps[k].label] > 1) td.reps[k].label += "#" + std::to_string(k);
    return td;
}

std::string validate_transfer(const AInfCategory& cat, const TransferData& td) {
    const std::size_t N = cat.basis.size();
    if (td.proj.size() != N || td.homotopy.size() != N || td.incl.size() != td.reps.size())
        return "transfer data has wrong shape";
    for (std::size_t x = 0; x < N; ++x) {
        int xi = static_cast<int>(x);
        Vec lhs = apply_map(td.homotopy, differential(cat, xi));
        vec_axpy(lhs, Scalar(1), apply_d(cat, td.homotopy[x]));
        Vec rhs{{xi, Scalar(1)}};
        vec_axpy(rhs, Scalar(-1), apply_map(td.incl, td.proj[x]));
        if (lhs != rhs) return "d h + h d != 1 - i p on " + cat.basis[x].label;
        if (!apply_map(td.homotopy, td.homotopy[x]).empty()) return "h^2 != 0 on " + cat.basis[x].label;
        if (!apply_map(td.proj, td.homotopy[x]).empty()) return "p h != 0 on " + cat.basis[x].label;
        if (!apply_map(td.proj, differential(cat, xi)).empty()) return "p is not a chain map on " + cat.basis[x].label;
    }
    for (std::size_t r = 0; r < td.reps.size(); ++r) {
        if (!apply_map(td.homotopy, td.incl[r]).empty()) return "h i != 0 on " + td.reps[r].label;
        if (!apply_d(cat, td.incl[r]).empty()) return "i is not a chain map on " + td.reps[r].label;
        if (apply_map(td.proj, td.incl[r]) != Vec{{static_cast<int>(r), Scalar(1)}}) return "p i != 1 on " + td.reps[r].label;
    }
    return "";
}

MinimalModel minimal_model(std::shared_ptr<const AInfCategory> cat, const TransferData* td_in, int arity_cap) {
    for (const auto& [n, t] : cat->ops)
        if (n >= 3 && !t.empty()) throw std::invalid_argument("minimal_model expects a dg category (b_n = 0 for n >= 3)");
    MinimalModel mm;
    if (cat->is_minimal()) {
        auto copy = std::make_shared<AInfCategory>(*cat);
        mm.min = copy;
        mm.incl = identity_functor(copy);
        mm.incl.target = cat;
        mm.data.reps = cat->basis;
        for (std::size_t x = 0; x < cat->basis.size(); ++x) {
            mm.data.incl.push_back({{static_cast<int>(x), Scalar(1)}});
            mm.data.proj.push_back({{static_cast<int>(x), Scalar(1)}});
            mm.data.homotopy.push_back({});
        }
        return mm;
    }
    mm.data = td_in ? *td_in : auto_transfer(*cat);
    if (auto err = validate_transfer(*cat, mm.data); !err.empty())
        throw std::invalid_argument("inconsistent transfer data: " + err);
    const TransferData& td = mm.data;

    auto min = std::make_shared<AInfCategory>();
    min->field = cat->field;
    min->objects = cat->objects;
    min->basis = td.reps;
    min->arity_cap = arity_cap;
    min->exact_above_cap = false;
    for (const auto& [o, e] : cat->units) {
        const Vec& pe = td.proj[static_cast<std::size_t>(e)];
        if (pe.size() == 1 && pe.begin()->second.is_one() && td.incl[static_cast<std::size_t>(pe.begin()->first)] == Vec{{e, Scalar(1)}})
            min->units[o] = pe.begin()->first;
    }

    // f_n on composable tuples of representatives, memoized by tuple.
    std::map<Tuple, Vec> F;
    for (std::size_t r = 0; r < td.reps.size(); ++r) F[{static_cast<int>(r)}] = td.incl[r];
    std::vector<int> arities;
    for (const auto& [k, t] : cat->ops)
        if (k >= 2 && !t.empty()) arities.push_back(k);

    for (int n = 2; n <= arity_cap; ++n) {
        for (const auto& t : min->composable_tuples(n)) {
            Vec lambda;
            for (int k : arities) {
                if (k > n) break;
                // sum over compositions of n into k positive parts
                std::vector<Vec> args;
                std::function<void(std::size_t, int)> rec = [&](std::size_t off, int left) {
                    if (left == 0) {
                        if (off == t.size()) vec_axpy(lambda, Scalar(1), cat->apply(args));
                        return;
                    }
                    for (std::size_t len = 1; off + len + static_cast<std::size_t>(left - 1) <= t.size(); ++len) {
                        Tuple sub(t.begin() + static_cast<long>(off), t.begin() + static_cast<long>(off + len));
                        auto it = F.find(sub);
                        if (it == F.end()) continue;
                        args.push_back(it->second);
                        rec(off + len, left - 1);
                        args.pop_back();
                    }
                };
                rec(0, k);
            }
            if (lambda.empty()) continue;
            Vec b = apply_map(td.proj, lambda);
            for (const auto& [y, c] : b) min->add_op(t, y, c);
            Vec f = apply_map(td.homotopy, lambda);
            if (!f.empty()) F[t] = std::move(f);
        }
    }

    mm.min = min;
    mm.incl.source = min;
    mm.incl.target = cat;
    for (std::size_t o = 0; o < cat->objects.size(); ++o) mm.incl.object_map.push_back(static_cast<int>(o));
    mm.incl.arity_cap = arity_cap;
    for (const auto& [t, v] : F)
        for (const auto& [y, c] : v) mm.incl.add_comp(t, y, c);
    return mm;
}

}  // namespace twocy
