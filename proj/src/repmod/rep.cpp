#include <algorithm>
#include <numeric>
#include <optional>
#include <random>

#include "internal.hpp"
#include "twocy/repmod.hpp"

namespace twocy {

namespace detail {

std::vector<std::size_t> offsets(const DimensionVector& d) {
    std::vector<std::size_t> off(d.size() + 1, 0);
    for (std::size_t i = 0; i < d.size(); ++i) off[i + 1] = off[i] + static_cast<std::size_t>(d[i]);
    return off;
}

SparseMatrix in_field(const SparseMatrix& m, const FieldCtx& f) {
    SparseMatrix out(m.rows(), m.cols());
    for (const auto& [rc, v] : m.entries()) out.set(rc.first, rc.second, v.in(f));
    return out;
}

SparseMatrix identity_in(std::size_t n, const FieldCtx& f) {
    SparseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, Scalar::one_in(f));
    return m;
}

SparseMatrix columns(const std::vector<DenseVec>& cols, std::size_t rows) {
    SparseMatrix m(rows, cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c)
        for (std::size_t r = 0; r < rows; ++r)
            if (!cols[c][r].is_zero()) m.set(r, c, cols[c][r]);
    return m;
}

DenseVec column(const SparseMatrix& m, std::size_t c) {
    DenseVec v(m.rows(), Scalar());
    for (const auto& [rc, x] : m.entries())
        if (rc.second == c) v[rc.first] = x;
    return v;
}

DenseVec coordinates(const SparseMatrix& basis, const DenseVec& y) {
    auto x = solve(basis, y);
    if (!x) throw std::logic_error("vector outside the span of a basis");
    return *x;
}

SparseMatrix block_diag_embed(const SparseMatrix& a, std::size_t n, std::size_t row0, std::size_t col0) {
    SparseMatrix m(n, n);
    for (const auto& [rc, v] : a.entries()) m.set(row0 + rc.first, col0 + rc.second, v);
    return m;
}

}  // namespace detail

using namespace detail;

MatrixRep MatrixRep::zero(const Quiver& q, const DimensionVector& d, const FieldCtx& f) {
    MatrixRep r;
    r.quiver = q;
    r.d = d;
    r.field = f;
    for (const auto& a : q.arrows)
        r.mats.emplace_back(static_cast<std::size_t>(d.at(static_cast<std::size_t>(a.tgt))), static_cast<std::size_t>(d.at(static_cast<std::size_t>(a.src))));
    return r;
}

long MatrixRep::total_dim() const { return std::accumulate(d.begin(), d.end(), 0L); }

void MatrixRep::validate() const {
    quiver.validate();
    if (d.size() != quiver.vertices.size()) throw std::invalid_argument("d: expected " + std::to_string(quiver.vertices.size()) + " entries");
    for (std::size_t i = 0; i < d.size(); ++i)
        if (d[i] < 0) throw std::invalid_argument("d[" + std::to_string(i) + "]: negative dimension");
    if (mats.size() != quiver.arrows.size()) throw std::invalid_argument("mats: expected one matrix per arrow");
    for (std::size_t k = 0; k < mats.size(); ++k) {
        const auto& a = quiver.arrows[k];
        auto r = static_cast<std::size_t>(d[static_cast<std::size_t>(a.tgt)]), c = static_cast<std::size_t>(d[static_cast<std::size_t>(a.src)]);
        if (mats[k].rows() != r || mats[k].cols() != c)
            throw std::invalid_argument("mats[" + std::to_string(k) + "]: expected " + std::to_string(r) + "x" + std::to_string(c) + ", got " +
                                        std::to_string(mats[k].rows()) + "x" + std::to_string(mats[k].cols()));
        for (const auto& [rc, v] : mats[k].entries())
            if (v.modulus() != field.p && !(field.is_rational() && v.is_rational()))
                throw std::invalid_argument("mats[" + std::to_string(k) + "]: entry outside " + field.name());
    }
}

SparseMatrix MatrixRep::eval(const Path& p) const {
    auto dim = [&](int v) { return static_cast<std::size_t>(d.at(static_cast<std::size_t>(v))); };
    if (p.arrows.empty()) return identity_in(dim(p.src), field);
    SparseMatrix m = identity_in(dim(p.src), field);
    for (auto it = p.arrows.rbegin(); it != p.arrows.rend(); ++it) m = mats.at(static_cast<std::size_t>(*it)) * m;
    return in_field(m, field);
}

MatrixRep MatrixRep::reduce(const FieldCtx& f) const {
    MatrixRep r = *this;
    r.field = f;
    for (auto& m : r.mats) m = in_field(m, f);
    return r;
}

namespace {

// Matrix of a combination on sum_i k^{d_i}, skipping terms through arrows
// that act by zero. Returns the (tgt, src) block when all terms share endpoints.
SparseMatrix eval_combo(const MatrixRep& rep, const PathCombo& c, const std::vector<bool>& acts) {
    auto off = offsets(rep.d);
    const std::size_t n = off.back();
    std::optional<std::pair<int, int>> ends;
    bool shared = true;
    for (const auto& [p, v] : c) {
        if (ends && *ends != std::pair{p.tgt, p.src}) shared = false;
        ends = {p.tgt, p.src};
    }
    SparseMatrix total(n, n);
    for (const auto& [p, v] : c) {
        bool zero = false;
        for (int a : p.arrows) zero = zero || !acts.at(static_cast<std::size_t>(a));
        if (zero) continue;
        SparseMatrix m = rep.eval(p).scaled(v);
        total = total + block_diag_embed(m, n, off[static_cast<std::size_t>(p.tgt)], off[static_cast<std::size_t>(p.src)]);
    }
    total = in_field(total, rep.field);
    if (!shared || !ends) return total;
    auto t = static_cast<std::size_t>(ends->first), s = static_cast<std::size_t>(ends->second);
    SparseMatrix block(off[t + 1] - off[t], off[s + 1] - off[s]);
    for (const auto& [rc, v] : total.entries())
        if (rc.first >= off[t] && rc.first < off[t + 1] && rc.second >= off[s] && rc.second < off[s + 1]) block.set(rc.first - off[t], rc.second - off[s], v);
    return block;
}

}  // namespace

RelationReport eval_relations(const MatrixRep& rep, const DGQuiverAlgebra& alg) {
    rep.validate();
    const auto& gq = alg.gens.quiver;
    std::vector<bool> acts(gq.arrows.size(), false);
    for (std::size_t k = 0; k < gq.arrows.size(); ++k) {
        if (alg.gens.degree.at(k) != 0) continue;
        if (k >= rep.quiver.arrows.size() || rep.quiver.arrows[k].src != gq.arrows[k].src || rep.quiver.arrows[k].tgt != gq.arrows[k].tgt)
            throw std::invalid_argument("mats[" + std::to_string(k) + "]: representation does not match generator " + gq.arrows[k].id);
        acts[k] = true;
    }
    RelationReport report;
    auto record = [&](const std::string& label, const PathCombo& c) {
        SparseMatrix r = eval_combo(rep, c, acts);
        if (r.is_zero()) return;
        report.pass = false;
        report.residuals.push_back({label, r});
    };
    for (std::size_t r = 0; r < alg.relations.size(); ++r) record("relation " + std::to_string(r), alg.relations[r]);
    for (const auto& [a, da] : alg.differential)
        if (alg.gens.degree.at(static_cast<std::size_t>(a)) == -1) record("d(" + gq.arrows[static_cast<std::size_t>(a)].id + ")", da);
    return report;
}

namespace {

// Original arrows of a double are those with index below their star.
bool is_original(const Quiver& q, std::size_t k) { return static_cast<std::size_t>(q.star.at(k)) > k; }

void require_double(const MatrixRep& rep) {
    if (rep.quiver.star.size() != rep.quiver.arrows.size()) throw std::invalid_argument("quiver: not a doubled quiver (star involution missing)");
}

}  // namespace

RelationReport eval_multiplicative(const MatrixRep& rep, const std::vector<Scalar>& q, const std::vector<int>& order) {
    rep.validate();
    require_double(rep);
    const auto& qv = rep.quiver;
    if (q.size() != qv.vertices.size()) throw std::invalid_argument("q: expected one parameter per vertex");
    std::vector<int> ord = order;
    if (ord.empty()) {
        ord.resize(qv.arrows.size());
        std::iota(ord.begin(), ord.end(), 0);
    }
    {
        std::vector<int> sorted = ord;
        std::sort(sorted.begin(), sorted.end());
        std::vector<int> want(qv.arrows.size());
        std::iota(want.begin(), want.end(), 0);
        if (sorted != want) throw std::invalid_argument("order: not a permutation of the arrows");
    }
    std::vector<SparseMatrix> prod;
    for (long di : rep.d) prod.push_back(identity_in(static_cast<std::size_t>(di), rep.field));
    for (int a : ord) {
        auto k = static_cast<std::size_t>(a);
        auto t = static_cast<std::size_t>(qv.arrows[k].tgt);
        SparseMatrix f = identity_in(static_cast<std::size_t>(rep.d[t]), rep.field) + rep.mats[k] * rep.mats[static_cast<std::size_t>(qv.star[k])];
        auto inv = inverse(f);
        if (!inv) throw std::invalid_argument("1 + a a* is not invertible for arrow " + qv.arrows[k].id);
        prod[t] = prod[t] * (is_original(qv, k) ? f : *inv);
    }
    RelationReport report;
    for (std::size_t i = 0; i < prod.size(); ++i) {
        SparseMatrix r = in_field(prod[i] - identity_in(prod[i].rows(), rep.field).scaled(q[i]), rep.field);
        if (r.is_zero()) continue;
        report.pass = false;
        report.residuals.push_back({"vertex " + qv.vertices[i], r});
    }
    return report;
}

std::vector<SparseMatrix> moment_map(const MatrixRep& rep) {
    rep.validate();
    require_double(rep);
    std::vector<SparseMatrix> mu;
    for (long di : rep.d) mu.emplace_back(static_cast<std::size_t>(di), static_cast<std::size_t>(di));
    for (std::size_t k = 0; k < rep.quiver.arrows.size(); ++k) {
        if (!is_original(rep.quiver, k)) continue;
        const auto& a = rep.quiver.arrows[k];
        const auto& A = rep.mats[k];
        const auto& As = rep.mats[static_cast<std::size_t>(rep.quiver.star[k])];
        mu[static_cast<std::size_t>(a.tgt)] = mu[static_cast<std::size_t>(a.tgt)] + A * As;
        mu[static_cast<std::size_t>(a.src)] = mu[static_cast<std::size_t>(a.src)] - As * A;
    }
    for (auto& m : mu) m = in_field(m, rep.field);
    return mu;
}

Scalar slope(const DimensionVector& d, const StabilityParam& zeta) {
    if (d.size() != zeta.size()) throw std::invalid_argument("slope: dimension vector and stability parameter differ in length");
    long dim = 0;
    Scalar num;
    for (std::size_t i = 0; i < d.size(); ++i) {
        if (d[i] < 0) throw std::invalid_argument("slope: negative dimension");
        dim += d[i];
        num += Scalar(d[i]) * zeta[i];
    }
    if (dim == 0) throw std::invalid_argument("slope of the zero dimension vector");
    return num / Scalar(dim);
}

Subrep generated_subrep(const MatrixRep& rep, const std::vector<std::pair<int, DenseVec>>& gens) {
    std::vector<Echelon> ech(rep.d.size());
    std::vector<std::pair<int, SparseVec>> queue;
    for (const auto& [v, x] : gens) queue.emplace_back(v, to_sparse(x));
    while (!queue.empty()) {
        auto [v, x] = std::move(queue.back());
        queue.pop_back();
        if (!ech[static_cast<std::size_t>(v)].insert(x)) continue;
        for (std::size_t k = 0; k < rep.quiver.arrows.size(); ++k)
            if (rep.quiver.arrows[k].src == v) {
                SparseVec y = rep.mats[k].apply(x);
                if (!y.empty()) queue.emplace_back(rep.quiver.arrows[k].tgt, std::move(y));
            }
    }
    Subrep s;
    for (std::size_t i = 0; i < rep.d.size(); ++i) {
        const auto n = static_cast<std::size_t>(rep.d[i]);
        std::vector<DenseVec> cols;
        for (const auto& [p, row] : ech[i].rows_by_pivot()) {
            DenseVec c = to_dense(row, n);
            for (auto& e : c) e = e.in(rep.field);
            cols.push_back(std::move(c));
        }
        s.d.push_back(static_cast<long>(cols.size()));
        s.basis.push_back(columns(cols, n));
    }
    return s;
}

MatrixRep restrict_to(const MatrixRep& rep, const Subrep& s) {
    MatrixRep out = MatrixRep::zero(rep.quiver, s.d, rep.field);
    for (std::size_t k = 0; k < rep.quiver.arrows.size(); ++k) {
        const auto& a = rep.quiver.arrows[k];
        const auto& bs = s.basis[static_cast<std::size_t>(a.src)];
        const auto& bt = s.basis[static_cast<std::size_t>(a.tgt)];
        for (std::size_t c = 0; c < bs.cols(); ++c) {
            DenseVec x = coordinates(bt, rep.mats[k].apply(column(bs, c)));
            for (std::size_t r = 0; r < x.size(); ++r)
                if (!x[r].is_zero()) out.mats[k].set(r, c, x[r].in(rep.field));
        }
    }
    return out;
}

MatrixRep quotient_by(const MatrixRep& rep, const Subrep& s) {
    // Complement spanned by the standard vectors off the pivots of s.
    std::vector<Echelon> ech(rep.d.size());
    std::vector<std::vector<std::size_t>> comp(rep.d.size());
    for (std::size_t i = 0; i < rep.d.size(); ++i) {
        for (std::size_t c = 0; c < s.basis[i].cols(); ++c) ech[i].insert(to_sparse(column(s.basis[i], c)));
        for (std::size_t j = 0; j < static_cast<std::size_t>(rep.d[i]); ++j)
            if (!ech[i].rows_by_pivot().count(j)) comp[i].push_back(j);
    }
    DimensionVector qd;
    for (const auto& c : comp) qd.push_back(static_cast<long>(c.size()));
    MatrixRep out = MatrixRep::zero(rep.quiver, qd, rep.field);
    for (std::size_t k = 0; k < rep.quiver.arrows.size(); ++k) {
        auto src = static_cast<std::size_t>(rep.quiver.arrows[k].src), tgt = static_cast<std::size_t>(rep.quiver.arrows[k].tgt);
        for (std::size_t c = 0; c < comp[src].size(); ++c) {
            SparseVec e{{comp[src][c], Scalar::one_in(rep.field)}};
            SparseVec y = ech[tgt].reduce(rep.mats[k].apply(e));
            for (std::size_t r = 0; r < comp[tgt].size(); ++r) {
                auto it = y.find(comp[tgt][r]);
                if (it != y.end()) out.mats[k].set(r, c, it->second.in(rep.field));
            }
        }
    }
    return out;
}

MatrixRep sample_moment_fiber(const Quiver& q, const DimensionVector& d, const FieldCtx& f, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    auto draw = [&]() -> Scalar {
        if (f.is_rational()) return Scalar(static_cast<long>(std::uniform_int_distribution<int>(-3, 3)(gen)));
        return Scalar::mod(f.p, static_cast<std::int64_t>(std::uniform_int_distribution<std::uint64_t>(0, f.p - 1)(gen)));
    };
    MatrixRep rep = MatrixRep::zero(double_quiver(q), d, f);
    const std::size_t n = q.arrows.size();
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t r = 0; r < rep.mats[k].rows(); ++r)
            for (std::size_t c = 0; c < rep.mats[k].cols(); ++c) rep.mats[k].set(r, c, draw());
    // mu is linear in the starred matrices once the others are fixed.
    std::vector<std::size_t> var0(n + 1, 0);
    for (std::size_t k = 0; k < n; ++k) var0[k + 1] = var0[k] + rep.mats[n + k].rows() * rep.mats[n + k].cols();
    std::size_t eqs = 0;
    for (long di : d) eqs += static_cast<std::size_t>(di * di);
    std::vector<std::size_t> eq0(d.size() + 1, 0);
    for (std::size_t i = 0; i < d.size(); ++i) eq0[i + 1] = eq0[i] + static_cast<std::size_t>(d[i] * d[i]);
    SparseMatrix sys(eqs, var0[n]);
    for (std::size_t k = 0; k < n; ++k) {
        const auto& A = rep.mats[k];
        auto t = static_cast<std::size_t>(q.arrows[k].tgt), s = static_cast<std::size_t>(q.arrows[k].src);
        const std::size_t dt = static_cast<std::size_t>(d[t]), ds = static_cast<std::size_t>(d[s]);
        // A* is ds x dt; the unit E_rc contributes A E_rc at t and -E_rc A at s.
        for (std::size_t r = 0; r < ds; ++r)
            for (std::size_t c = 0; c < dt; ++c) {
                std::size_t var = var0[k] + r * dt + c;
                for (std::size_t x = 0; x < dt; ++x) sys.add(eq0[t] + x * dt + c, var, A.get(x, r));
                for (std::size_t y = 0; y < ds; ++y) sys.add(eq0[s] + r * ds + y, var, -A.get(c, y));
            }
    }
    auto rki = rank_kernel_image(sys);
    DenseVec sol(var0[n], Scalar::zero_in(f));
    for (const auto& kv : rki.kernel) {
        Scalar coef = draw();
        for (std::size_t v = 0; v < sol.size(); ++v) sol[v] += coef * kv[v];
    }
    for (std::size_t k = 0; k < n; ++k) {
        auto& m = rep.mats[n + k];
        for (std::size_t r = 0; r < m.rows(); ++r)
            for (std::size_t c = 0; c < m.cols(); ++c) m.set(r, c, sol[var0[k] + r * m.cols() + c].in(f));
    }
    return rep;
}

}  // namespace twocy
