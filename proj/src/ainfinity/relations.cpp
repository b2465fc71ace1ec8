#include "twocy/ainfinity.hpp"
#include "twocy/sparse.hpp"
#include "internal.hpp"

namespace twocy {

namespace detail {

OuterIndex::OuterIndex(const OpTable& table) {
    for (const auto& [t, v] : table)
        for (std::size_t r = 0; r < t.size(); ++r) at[{r, t[r]}].push_back({&t, &v});
}

void accumulate_insertions(const AInfCategory& cat, const OpTable& inner, const OpTable& outer, std::size_t outer_arity,
                           std::map<Tuple, Vec>& acc, const Scalar& scale) {
    if (inner.empty() || outer.empty()) return;
    OuterIndex index(outer);
    for (const auto& [in_t, in_v] : inner) {
        for (const auto& [y, c] : in_v) {
            for (std::size_t r = 0; r < outer_arity; ++r) {
                auto it = index.at.find({r, y});
                if (it == index.at.end()) continue;
                for (const auto& [ot, ov] : it->second) {
                    long e = 0;
                    for (std::size_t q = 0; q < r; ++q) e += cat.shifted((*ot)[q]);
                    Tuple full(ot->begin(), ot->begin() + static_cast<long>(r));
                    full.insert(full.end(), in_t.begin(), in_t.end());
                    full.insert(full.end(), ot->begin() + static_cast<long>(r) + 1, ot->end());
                    vec_axpy(acc[full], scale * parity_sign(e) * c, *ov);
                }
            }
        }
    }
}

void collect_witnesses(const AInfCategory& cat, int arity, const std::map<Tuple, Vec>& acc, CheckReport& report,
                       std::size_t max_witnesses, const std::string& what) {
    for (const auto& [t, v] : acc) {
        if (v.empty()) continue;
        if (report.pass) report.message = what + " fails at arity " + std::to_string(arity);
        report.pass = false;
        if (report.witnesses.size() < max_witnesses)
            report.witnesses.push_back({arity, t, v, "arity " + std::to_string(arity) + " on " + cat.tuple_str(t) + ": residual " + cat.vec_str(v)});
    }
}

}  // namespace detail

CheckReport check_relations(const AInfCategory& cat, int max_arity, std::size_t max_witnesses) {
    for (int k = 1; k <= max_arity; ++k)
        if (!cat.known(k)) throw TruncationError("truncation: relation " + std::to_string(max_arity) + " not checkable");
    CheckReport report;
    static const OpTable empty;
    auto table = [&](int n) -> const OpTable& {
        auto it = cat.ops.find(n);
        return it == cat.ops.end() ? empty : it->second;
    };
    for (int n = 1; n <= max_arity; ++n) {
        std::map<Tuple, Vec> acc;
        for (int s = 1; s <= n; ++s) {
            int u = n - s + 1;
            detail::accumulate_insertions(cat, table(s), table(u), static_cast<std::size_t>(u), acc, Scalar(1));
        }
        detail::collect_witnesses(cat, n, acc, report, max_witnesses, "A-infinity relation");
    }
    if (report.pass) report.message = "relations hold exactly up to arity " + std::to_string(max_arity);
    return report;
}

std::string to_string(Unitality u) {
    switch (u) {
        case Unitality::strict:
            return "strict";
        case Unitality::weak_only:
            return "weak-only";
        default:
            return "non-unital";
    }
}

namespace {

// Strict-unit conditions for a unit basis element e at object o.
void strict_violations(const AInfCategory& cat, int o, int e, std::vector<Witness>& out) {
    if (const Vec* d = cat.op({e}); d && !d->empty())
        out.push_back({1, {e}, *d, "b1 of the unit is nonzero"});
    for (std::size_t x = 0; x < cat.basis.size(); ++x) {
        const auto& bx = cat.basis[x];
        int xi = static_cast<int>(x);
        if (bx.tgt == o) {
            Vec got = cat.op({e, xi}) ? *cat.op({e, xi}) : Vec{};
            Vec want{{xi, Scalar(1)}};
            if (got != want) {
                Vec diff = got;
                vec_axpy(diff, Scalar(-1), want);
                out.push_back({2, {e, xi}, diff, "left unit law fails on " + bx.label});
            }
        }
        if (bx.src == o) {
            Vec got = cat.op({xi, e}) ? *cat.op({xi, e}) : Vec{};
            Vec want{{xi, parity_sign(bx.degree)}};
            if (got != want) {
                Vec diff = got;
                vec_axpy(diff, Scalar(-1), want);
                out.push_back({2, {xi, e}, diff, "right unit law fails on " + bx.label});
            }
        }
    }
    for (const auto& [n, table] : cat.ops) {
        if (n < 3) continue;
        for (const auto& [t, v] : table)
            for (int x : t)
                if (x == e) {
                    out.push_back({n, t, v, "b" + std::to_string(n) + " is nonzero on a tuple containing the unit"});
                    break;
                }
    }
}

SparseVec to_sv(const Vec& v) {
    SparseVec s;
    for (const auto& [k, c] : v) s.emplace(static_cast<std::size_t>(k), c);
    return s;
}

// Coboundaries of the whole category as an echelon form in basis coordinates.
Echelon boundaries(const AInfCategory& cat) {
    Echelon e;
    auto it = cat.ops.find(1);
    if (it != cat.ops.end())
        for (const auto& [t, v] : it->second) e.insert(to_sv(v));
    return e;
}

// Search for a weak unit at object o: a degree-0 cocycle acting as the
// identity on cohomology from both sides.
std::optional<Vec> weak_unit(const AInfCategory& cat, int o, const std::vector<Vec>& reps, const Echelon& bd) {
    std::vector<int> cand;
    for (int x : cat.hom(o, o))
        if (cat.basis[static_cast<std::size_t>(x)].degree == 0) cand.push_back(x);
    // rows: (condition, basis index) flattened
    std::map<std::pair<int, std::size_t>, std::size_t> row_of;
    std::vector<std::map<std::size_t, Scalar>> cols(cand.size());
    std::map<std::size_t, Scalar> rhs;
    auto row = [&](int cond, std::size_t b) {
        auto key = std::make_pair(cond, b);
        auto it = row_of.find(key);
        if (it != row_of.end()) return it->second;
        std::size_t r = row_of.size();
        row_of.emplace(key, r);
        return r;
    };
    for (std::size_t k = 0; k < cand.size(); ++k) {
        int e = cand[k];
        if (const Vec* d = cat.op({e}))
            for (const auto& [y, c] : *d) cols[k][row(-1, static_cast<std::size_t>(y))] += c;
    }
    int cond = 0;
    for (const auto& x : reps) {
        const auto& bx = cat.basis[static_cast<std::size_t>(x.begin()->first)];
        for (int side = 0; side < 2; ++side, ++cond) {
            if (side == 0 && bx.tgt != o) continue;
            if (side == 1 && bx.src != o) continue;
            Scalar sgn = side == 0 ? Scalar(1) : parity_sign(bx.degree);
            for (std::size_t k = 0; k < cand.size(); ++k) {
                Vec prod = side == 0 ? cat.apply({Vec{{cand[k], Scalar(1)}}, x}) : cat.apply({x, Vec{{cand[k], Scalar(1)}}});
                for (const auto& [y, c] : bd.reduce(to_sv(vec_scaled(prod, sgn)))) cols[k][row(cond, y)] += c;
            }
            for (const auto& [y, c] : bd.reduce(to_sv(x))) rhs[row(cond, y)] += c;
        }
    }
    SparseMatrix m(row_of.size(), cand.size());
    for (std::size_t k = 0; k < cand.size(); ++k)
        for (const auto& [r, c] : cols[k]) m.add(r, k, c);
    DenseVec b(row_of.size());
    for (const auto& [r, c] : rhs) b[r] = c;
    auto sol = solve(m, b);
    if (!sol) return std::nullopt;
    Vec e;
    for (std::size_t k = 0; k < cand.size(); ++k) vec_add(e, cand[k], (*sol)[k]);
    return e;
}

}  // namespace

UnitalityReport check_unitality(const AInfCategory& cat) {
    UnitalityReport rep;
    std::vector<Witness> strict_fail;
    bool declared_all = cat.units.size() == cat.objects.size();
    if (declared_all) {
        for (const auto& [o, e] : cat.units) {
            strict_violations(cat, o, e, strict_fail);
            rep.units[o] = Vec{{e, Scalar(1)}};
        }
        if (strict_fail.empty()) {
            rep.kind = Unitality::strict;
            rep.message = "declared units are strict";
            return rep;
        }
    }
    // Weak test on cohomology.
    auto td = auto_transfer(cat);
    Echelon bd = boundaries(cat);
    bool all_found = true;
    for (std::size_t o = 0; o < cat.objects.size(); ++o) {
        int oi = static_cast<int>(o);
        auto e = weak_unit(cat, oi, td.incl, bd);
        if (!e) {
            all_found = false;
            rep.witnesses.push_back({0, {}, {}, "no cohomological unit at object " + cat.objects[o]});
            continue;
        }
        if (!declared_all) rep.units[oi] = *e;
    }
    if (!all_found) {
        rep.kind = Unitality::non_unital;
        rep.message = "some object has no cohomological identity";
        return rep;
    }
    if (!declared_all) {
        // A found unit that happens to be a basis element may already be strict.
        bool strict = true;
        for (const auto& [o, v] : rep.units) {
            if (v.size() != 1 || !v.begin()->second.is_one()) {
                strict = false;
                continue;
            }
            strict_violations(cat, o, v.begin()->first, strict_fail);
        }
        if (strict && strict_fail.empty()) {
            rep.kind = Unitality::strict;
            rep.message = "strict units found among basis elements";
            return rep;
        }
    }
    rep.kind = Unitality::weak_only;
    rep.witnesses.insert(rep.witnesses.end(), strict_fail.begin(), strict_fail.end());
    rep.message = "units exist in cohomology but are not strict";
    return rep;
}

}  // namespace twocy
