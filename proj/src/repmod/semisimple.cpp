#include <algorithm>

#include "internal.hpp"
#include "twocy/repmod.hpp"

namespace twocy {

using namespace detail;

namespace {

SparseVec flatten(const SparseMatrix& m) {
    SparseVec v;
    for (const auto& [rc, x] : m.entries()) v.emplace(rc.first * m.cols() + rc.second, x);
    return v;
}

Scalar trace(const SparseMatrix& m) {
    Scalar t;
    for (const auto& [rc, x] : m.entries())
        if (rc.first == rc.second) t += x;
    return t;
}

SparseMatrix linear_combination(const std::vector<SparseMatrix>& basis, const DenseVec& c, std::size_t n) {
    SparseMatrix m(n, n);
    for (std::size_t j = 0; j < basis.size(); ++j)
        if (!c[j].is_zero()) m = m + basis[j].scaled(c[j]);
    return m;
}

// Representation matrices as block operators on sum_i k^{d_i}.
std::vector<SparseMatrix> generators(const MatrixRep& rep) {
    auto off = offsets(rep.d);
    const std::size_t n = off.back();
    std::vector<SparseMatrix> g;
    for (std::size_t i = 0; i < rep.d.size(); ++i)
        if (rep.d[i] > 0) g.push_back(block_diag_embed(identity_in(static_cast<std::size_t>(rep.d[i]), rep.field), n, off[i], off[i]));
    for (std::size_t k = 0; k < rep.mats.size(); ++k) {
        const auto& a = rep.quiver.arrows[k];
        g.push_back(block_diag_embed(rep.mats[k], n, off[static_cast<std::size_t>(a.tgt)], off[static_cast<std::size_t>(a.src)]));
    }
    return g;
}

}  // namespace

MatrixAlgebra acting_algebra(const MatrixRep& rep) {
    rep.validate();
    MatrixAlgebra alg;
    alg.n = static_cast<std::size_t>(rep.total_dim());
    auto gens = generators(rep);
    Echelon ech;
    std::vector<SparseMatrix> queue;
    for (const auto& g : gens)
        if (!g.is_zero() && ech.insert(flatten(g))) {
            alg.basis.push_back(g);
            queue.push_back(g);
        }
    // Left multiplication by generators closes the span of all paths.
    for (std::size_t head = 0; head < queue.size(); ++head)
        for (const auto& g : gens) {
            SparseMatrix p = in_field(g * queue[head], rep.field);
            if (!p.is_zero() && ech.insert(flatten(p))) {
                alg.basis.push_back(p);
                queue.push_back(p);
            }
        }
    return alg;
}

MatrixAlgebra radical_char0(const MatrixAlgebra& alg) {
    for (const auto& b : alg.basis)
        for (const auto& [rc, x] : b.entries())
            if (!x.is_rational()) throw FieldError("radical_char0: prime field; use the brute-force path");
    const std::size_t m = alg.basis.size();
    SparseMatrix gram(m, m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i; j < m; ++j) {
            Scalar t = trace(alg.basis[i] * alg.basis[j]);
            gram.set(i, j, t);
            gram.set(j, i, t);
        }
    MatrixAlgebra rad;
    rad.n = alg.n;
    for (const auto& kv : rank_kernel_image(gram).kernel) rad.basis.push_back(linear_combination(alg.basis, kv, alg.n));
    return rad;
}

std::vector<std::vector<SparseMatrix>> hom_space(const MatrixRep& m, const MatrixRep& n) {
    if (m.quiver.arrows.size() != n.quiver.arrows.size() || m.d.size() != n.d.size())
        throw std::invalid_argument("hom_space: representations of different quivers");
    const std::size_t nv = m.d.size();
    std::vector<std::size_t> var0(nv + 1, 0);
    for (std::size_t i = 0; i < nv; ++i) var0[i + 1] = var0[i] + static_cast<std::size_t>(m.d[i] * n.d[i]);
    // X_i is n.d[i] x m.d[i]; variable (r, c) at var0[i] + r * m.d[i] + c.
    auto var = [&](std::size_t i, std::size_t r, std::size_t c) { return var0[i] + r * static_cast<std::size_t>(m.d[i]) + c; };
    std::size_t rows = 0;
    std::vector<std::size_t> eq0;
    for (const auto& a : m.quiver.arrows) {
        eq0.push_back(rows);
        rows += static_cast<std::size_t>(n.d[static_cast<std::size_t>(a.tgt)] * m.d[static_cast<std::size_t>(a.src)]);
    }
    SparseMatrix sys(rows, var0[nv]);
    for (std::size_t k = 0; k < m.quiver.arrows.size(); ++k) {
        auto s = static_cast<std::size_t>(m.quiver.arrows[k].src), t = static_cast<std::size_t>(m.quiver.arrows[k].tgt);
        const std::size_t ds = static_cast<std::size_t>(m.d[s]);
        // (N_a X_s - X_t M_a)[r][c]
        for (const auto& [rc, x] : n.mats[k].entries())
            for (std::size_t c = 0; c < ds; ++c) sys.add(eq0[k] + rc.first * ds + c, var(s, rc.second, c), x);
        for (const auto& [rc, x] : m.mats[k].entries())
            for (std::size_t r = 0; r < static_cast<std::size_t>(n.d[t]); ++r) sys.add(eq0[k] + r * ds + rc.second, var(t, r, rc.first), -x);
    }
    std::vector<std::vector<SparseMatrix>> out;
    for (const auto& kv : rank_kernel_image(sys).kernel) {
        std::vector<SparseMatrix> x;
        for (std::size_t i = 0; i < nv; ++i) {
            SparseMatrix b(static_cast<std::size_t>(n.d[i]), static_cast<std::size_t>(m.d[i]));
            for (std::size_t r = 0; r < b.rows(); ++r)
                for (std::size_t c = 0; c < b.cols(); ++c) b.set(r, c, kv[var(i, r, c)].in(m.field));
            x.push_back(std::move(b));
        }
        out.push_back(std::move(x));
    }
    return out;
}

namespace {

Semisimplification semisimplify_char0(const MatrixRep& rep) {
    Semisimplification res;
    const std::size_t nv = rep.d.size();
    auto off = offsets(rep.d);
    auto rad = radical_char0(acting_algebra(rep));

    // Layers S_k = J^k M, per vertex, as reduced echelon forms.
    std::vector<std::vector<Echelon>> layers;
    layers.emplace_back(nv);
    for (std::size_t i = 0; i < nv; ++i)
        for (std::size_t j = 0; j < static_cast<std::size_t>(rep.d[i]); ++j) layers[0][i].insert(SparseVec{{j, Scalar(1)}});
    while (true) {
        const auto& cur = layers.back();
        std::size_t dim = 0;
        for (const auto& e : cur) dim += e.rank();
        if (dim == 0) break;
        std::vector<Echelon> next(nv);
        for (std::size_t i = 0; i < nv; ++i)
            for (const auto& [p, row] : cur[i].rows_by_pivot()) {
                SparseVec v;
                for (const auto& [c, x] : row) v.emplace(off[i] + c, x);
                for (const auto& j : rad.basis) {
                    SparseVec y = j.apply(v);
                    std::vector<SparseVec> parts(nv);
                    for (const auto& [r, x] : y) {
                        auto t = static_cast<std::size_t>(std::upper_bound(off.begin(), off.end(), r) - off.begin() - 1);
                        parts[t].emplace(r - off[t], x);
                    }
                    for (std::size_t t = 0; t < nv; ++t)
                        if (!parts[t].empty()) next[t].insert(parts[t]);
                }
            }
        layers.push_back(std::move(next));
    }
    for (const auto& l : layers) {
        DimensionVector d;
        for (const auto& e : l) d.push_back(static_cast<long>(e.rank()));
        res.filtration.layers.push_back(d);
    }

    // Adapted basis: complements of S_{k+1} in S_k, top layer first.
    std::vector<std::vector<std::size_t>> layer_of(nv);
    std::vector<std::vector<DenseVec>> cols(nv);
    for (std::size_t i = 0; i < nv; ++i)
        for (std::size_t k = 0; k + 1 < layers.size(); ++k) {
            Echelon ech = layers[k + 1][i];
            for (const auto& [p, row] : layers[k][i].rows_by_pivot())
                if (ech.insert(row)) {
                    cols[i].push_back(to_dense(row, static_cast<std::size_t>(rep.d[i])));
                    layer_of[i].push_back(k);
                }
        }
    for (std::size_t i = 0; i < nv; ++i) res.basis.push_back(columns(cols[i], static_cast<std::size_t>(rep.d[i])));

    res.out = MatrixRep::zero(rep.quiver, rep.d, rep.field);
    for (std::size_t a = 0; a < rep.mats.size(); ++a) {
        auto s = static_cast<std::size_t>(rep.quiver.arrows[a].src), t = static_cast<std::size_t>(rep.quiver.arrows[a].tgt);
        for (std::size_t c = 0; c < cols[s].size(); ++c) {
            DenseVec x = coordinates(res.basis[t], rep.mats[a].apply(cols[s][c]));
            for (std::size_t r = 0; r < x.size(); ++r)
                if (layer_of[t][r] == layer_of[s][c] && !x[r].is_zero()) res.out.mats[a].set(r, c, x[r]);
        }
    }
    return res;
}

MatrixRep direct_sum(const Quiver& q, const std::vector<MatrixRep>& parts, const FieldCtx& f) {
    DimensionVector d(q.vertices.size(), 0);
    for (const auto& p : parts)
        for (std::size_t i = 0; i < d.size(); ++i) d[i] += p.d[i];
    MatrixRep out = MatrixRep::zero(q, d, f);
    std::vector<std::size_t> at(d.size(), 0);
    for (const auto& p : parts) {
        for (std::size_t k = 0; k < q.arrows.size(); ++k) {
            auto s = static_cast<std::size_t>(q.arrows[k].src), t = static_cast<std::size_t>(q.arrows[k].tgt);
            for (const auto& [rc, x] : p.mats[k].entries()) out.mats[k].set(at[t] + rc.first, at[s] + rc.second, x);
        }
        for (std::size_t i = 0; i < d.size(); ++i) at[i] += static_cast<std::size_t>(p.d[i]);
    }
    return out;
}

}  // namespace

Semisimplification semisimplify_detailed(const MatrixRep& rep) {
    rep.validate();
    if (rep.field.is_rational()) return semisimplify_char0(rep);
    Semisimplification res;
    res.out = direct_sum(rep.quiver, jh_factors_bruteforce(rep, rep.total_dim()), rep.field);
    return res;
}

MatrixRep semisimplify(const MatrixRep& rep) { return semisimplify_detailed(rep).out; }

namespace {

SparseMatrix poly_at(const RatPolynomial& f, const SparseMatrix& x) {
    const std::size_t n = x.rows();
    SparseMatrix acc(n, n);
    for (int k = f.degree(); k >= 0; --k) acc = acc * x + SparseMatrix::identity(n).scaled(f.coeff(k));
    return acc;
}

RatPolynomial minimal_polynomial(const SparseMatrix& x) {
    const std::size_t n = x.rows();
    Echelon ech;
    SparseMatrix p = SparseMatrix::identity(n);
    for (std::size_t k = 0;; ++k) {
        SparseVec coeffs;
        SparseVec rem = ech.reduce_tracked(flatten(p), coeffs);
        if (rem.empty()) {
            std::vector<Scalar> c(k + 1, Scalar());
            c[k] = Scalar(1);
            for (const auto& [i, v] : coeffs) c[i] = -v;
            return RatPolynomial(c);
        }
        ech.insert(flatten(p));
        p = p * x;
    }
}

// Per-vertex blocks of an endomorphism tuple as one block-diagonal matrix.
SparseMatrix assemble(const std::vector<SparseMatrix>& blocks, const std::vector<std::size_t>& off) {
    SparseMatrix m(off.back(), off.back());
    for (std::size_t i = 0; i < blocks.size(); ++i)
        for (const auto& [rc, x] : blocks[i].entries()) m.set(off[i] + rc.first, off[i] + rc.second, x);
    return m;
}

// Graded subspace (per-vertex column bases) spanned by the columns of a
// block-diagonal operator's kernel.
Subrep kernel_subrep(const SparseMatrix& x, const DimensionVector& d) {
    auto off = offsets(d);
    Subrep s;
    for (std::size_t i = 0; i < d.size(); ++i) {
        const auto di = static_cast<std::size_t>(d[i]);
        SparseMatrix b(di, di);
        for (const auto& [rc, v] : x.entries())
            if (rc.first >= off[i] && rc.first < off[i + 1]) b.set(rc.first - off[i], rc.second - off[i], v);
        auto kern = rank_kernel_image(b).kernel;
        s.d.push_back(static_cast<long>(kern.size()));
        s.basis.push_back(columns(kern, di));
    }
    return s;
}

// Complement submodule of k in a semisimple rep: the kernel of an
// equivariant projection onto k.
Subrep complement(const std::vector<SparseMatrix>& end, const Subrep& k, const DimensionVector& d) {
    auto off = offsets(d);
    const std::size_t n = off.back(), m = end.size();
    std::vector<DenseVec> kvecs;  // k as global vectors
    for (std::size_t i = 0; i < d.size(); ++i)
        for (std::size_t c = 0; c < k.basis[i].cols(); ++c) {
            DenseVec v(n, Scalar());
            for (const auto& [rc, x] : k.basis[i].entries())
                if (rc.second == c) v[off[i] + rc.first] = x;
            kvecs.push_back(std::move(v));
        }
    // Annihilator of k: rows a with a . v = 0 for v in k.
    auto ann = rank_kernel_image(columns(kvecs, n).transpose()).kernel;
    // pi = sum_j c_j end_j with pi v = v on k and ann pi = 0.
    std::size_t rows = kvecs.size() * n + ann.size() * n;
    SparseMatrix sys(rows, m);
    DenseVec rhs(rows, Scalar());
    for (std::size_t j = 0; j < m; ++j) {
        for (std::size_t q = 0; q < kvecs.size(); ++q) {
            DenseVec y = end[j].apply(kvecs[q]);
            for (std::size_t r = 0; r < n; ++r) sys.set(q * n + r, j, y[r]);
        }
        SparseMatrix at = end[j];
        for (std::size_t q = 0; q < ann.size(); ++q)
            for (std::size_t c = 0; c < n; ++c) {
                Scalar s;
                for (std::size_t r = 0; r < n; ++r) s += ann[q][r] * at.get(r, c);
                sys.set(kvecs.size() * n + q * n + c, j, s);
            }
    }
    for (std::size_t q = 0; q < kvecs.size(); ++q)
        for (std::size_t r = 0; r < n; ++r) rhs[q * n + r] = kvecs[q][r];
    auto c = solve(sys, rhs);
    if (!c) throw std::logic_error("no equivariant projection: representation is not semisimple");
    return kernel_subrep(linear_combination(end, *c, n), d);
}

struct Piece {
    MatrixRep rep;
    std::optional<RatPolynomial> galois;
    bool certified = true;
};

// Deterministic small combinations of the basis used as splitting candidates.
std::vector<DenseVec> candidates(std::size_t m) {
    std::vector<DenseVec> out;
    for (std::size_t j = 0; j < m; ++j) {
        DenseVec c(m, Scalar());
        c[j] = Scalar(1);
        out.push_back(c);
    }
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j) {
            DenseVec c(m, Scalar());
            c[i] = Scalar(1);
            c[j] = Scalar(1);
            out.push_back(c);
        }
    std::uint64_t state = 12345;
    for (int t = 0; t < 24; ++t) {
        DenseVec c(m);
        for (auto& x : c) {
            state = state * 6364136223846793005ULL + 1442695040888963407ULL;
            x = Scalar(static_cast<long>((state >> 33) % 7) - 3);
        }
        out.push_back(c);
    }
    return out;
}

void split_into_simples(const MatrixRep& rep, std::vector<Piece>& out) {
    if (rep.total_dim() == 0) return;
    auto off = offsets(rep.d);
    std::vector<SparseMatrix> end;
    for (const auto& x : hom_space(rep, rep)) end.push_back(assemble(x, off));
    if (end.size() == 1) {
        out.push_back({rep, std::nullopt, true});
        return;
    }
    bool commutative = true;
    for (std::size_t i = 0; i < end.size() && commutative; ++i)
        for (std::size_t j = i + 1; j < end.size() && commutative; ++j) commutative = end[i] * end[j] == end[j] * end[i];

    std::optional<RatPolynomial> widest;
    for (const auto& c : candidates(end.size())) {
        SparseMatrix x = linear_combination(end, c, off.back());
        auto mp = minimal_polynomial(x);
        auto factors = factor_rational_poly(mp);
        if (factors.size() == 1 && factors[0].second == 1) {
            if (!widest || mp.degree() > widest->degree()) widest = mp;
            // A field of full dimension: the endomorphism algebra is a field.
            if (commutative && static_cast<std::size_t>(mp.degree()) == end.size()) {
                out.push_back({rep, mp, true});
                return;
            }
            continue;
        }
        Subrep k = kernel_subrep(poly_at(factors[0].first, x), rep.d);
        Subrep rest = complement(end, k, rep.d);
        split_into_simples(restrict_to(rep, k), out);
        split_into_simples(restrict_to(rep, rest), out);
        return;
    }
    out.push_back({rep, widest, false});
}

}  // namespace

std::vector<IsotypicBlock> isotypic_decompose(const MatrixRep& rep) {
    rep.validate();
    if (!rep.field.is_rational()) throw FieldError("isotypic_decompose: only the rationals are supported");
    if (!radical_char0(acting_algebra(rep)).basis.empty()) throw std::invalid_argument("isotypic_decompose: representation has nonzero radical");
    std::vector<Piece> pieces;
    split_into_simples(rep, pieces);
    std::vector<IsotypicBlock> blocks;
    for (auto& p : pieces) {
        bool placed = false;
        for (auto& b : blocks)
            if (b.simple.d == p.rep.d && !hom_space(b.simple, p.rep).empty()) {
                ++b.multiplicity;
                placed = true;
                break;
            }
        if (!placed) blocks.push_back({p.rep, 1, p.galois, p.certified});
    }
    return blocks;
}

}  // namespace twocy
