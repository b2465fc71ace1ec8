#include <algorithm>
#include <sstream>

#include "twocy/localmodel.hpp"

namespace twocy {

MCPresentation mc_presentation(const AInfCategory& cat, const DimensionVector& d, int arity_cap, bool certified_cubic) {
    if (!cat.is_minimal()) throw std::invalid_argument("mc_presentation: category is not minimal");
    if (d.size() != cat.objects.size()) throw std::invalid_argument("d: expected one entry per object");
    for (long x : d)
        if (x < 0) throw std::invalid_argument("d: negative entry");
    if (arity_cap < 1) throw std::invalid_argument("arity_cap: must be at least 1");
    if (!cat.known(arity_cap))
        throw TruncationError("mc_presentation: b_" + std::to_string(arity_cap) + " is not known (cap " + std::to_string(cat.arity_cap) + ")");

    MCPresentation p;
    p.d = d;
    p.arity_cap = arity_cap;
    p.exact = certified_cubic || (cat.exact_above_cap && arity_cap >= cat.max_nonzero_arity());
    for (std::size_t x = 0; x < cat.basis.size(); ++x) {
        const auto& b = cat.basis[x];
        p.labels.push_back(b.label);
        p.src.push_back(b.src);
        p.tgt.push_back(b.tgt);
        if (b.degree >= 1) p.generators.push_back(static_cast<int>(x));
        if (b.degree == 1) p.coordinates.push_back(static_cast<int>(x));
    }
    for (int n = 1; n <= arity_cap; ++n) {
        auto it = cat.ops.find(n);
        if (it == cat.ops.end()) continue;
        for (const auto& [t, out] : it->second) {
            bool positive = true, degree_one = true;
            for (int x : t) {
                int deg = cat.basis[static_cast<std::size_t>(x)].degree;
                positive = positive && deg >= 1;
                degree_one = degree_one && deg == 1;
            }
            if (!positive) continue;
            for (const auto& [y, c] : out) {
                if (c.is_zero()) continue;
                p.differential[y].push_back({c, t});
                if (degree_one && cat.basis[static_cast<std::size_t>(y)].degree == 2) p.equations[y].push_back({c, t});
            }
        }
    }
    return p;
}

namespace {

std::size_t dim_of(const MCPresentation& p, int object) { return static_cast<std::size_t>(p.d[static_cast<std::size_t>(object)]); }

}  // namespace

std::map<int, SparseMatrix> mc_residuals(const MCPresentation& p, const std::map<int, SparseMatrix>& x) {
    for (int c : p.coordinates) {
        auto it = x.find(c);
        if (it == x.end()) throw std::invalid_argument("mc_residuals: missing coordinate " + p.labels[static_cast<std::size_t>(c)]);
        std::size_t r = dim_of(p, p.tgt[static_cast<std::size_t>(c)]), k = dim_of(p, p.src[static_cast<std::size_t>(c)]);
        if (it->second.rows() != r || it->second.cols() != k)
            throw std::invalid_argument("mc_residuals: " + p.labels[static_cast<std::size_t>(c)] + " should be " + std::to_string(r) + "x" +
                                        std::to_string(k));
    }
    std::map<int, SparseMatrix> out;
    for (const auto& [y, monos] : p.equations) {
        SparseMatrix acc(dim_of(p, p.tgt[static_cast<std::size_t>(y)]), dim_of(p, p.src[static_cast<std::size_t>(y)]));
        for (const auto& m : monos) {
            SparseMatrix prod = x.at(m.word.front());
            for (std::size_t k = 1; k < m.word.size(); ++k) prod = prod * x.at(m.word[k]);
            acc = acc + prod.scaled(m.coeff);
        }
        out.emplace(y, std::move(acc));
    }
    return out;
}

ArrowFrame darboux_frame(const AInfCategory& cat) {
    ArrowFrame f;
    f.quiver = ext_quiver_halve(verify_sigma(cat));
    f.doubled = double_quiver(f.quiver);
    std::optional<CyclicPairing> pairing = cat.pairing ? cat.pairing : trace_pairing(cat);
    if (!pairing) throw std::invalid_argument("darboux_frame: no cyclic pairing (none declared and the trace pairing is degenerate)");
    auto omega = [&](const SparseVec& a, const SparseVec& b) {
        Scalar s = Scalar::zero_in(cat.field);
        for (const auto& [x, cx] : a)
            for (const auto& [y, cy] : b) s += cx * cy * pairing->value(static_cast<int>(x), static_cast<int>(y));
        return s;
    };
    auto unit_vec = [&](int x) { return SparseVec{{static_cast<std::size_t>(x), Scalar::one_in(cat.field)}}; };
    auto ext1 = [&](int s, int t) {
        std::vector<int> out;
        for (int x : cat.hom(s, t))
            if (cat.basis[static_cast<std::size_t>(x)].degree == 1) out.push_back(x);
        return out;
    };

    const std::size_t nq = f.quiver.arrows.size();
    f.arrow_vectors.assign(2 * nq, {});
    std::size_t next = 0;
    const int n = static_cast<int>(cat.objects.size());

    for (int i = 0; i < n; ++i) {
        std::vector<SparseVec> rest;
        for (int x : ext1(i, i)) rest.push_back(unit_vec(x));
        while (!rest.empty()) {
            SparseVec pv = rest.front();
            rest.erase(rest.begin());
            auto partner = std::find_if(rest.begin(), rest.end(), [&](const SparseVec& v) { return !omega(pv, v).is_zero(); });
            if (partner == rest.end()) throw std::invalid_argument("darboux_frame: pairing is degenerate on Ext^1 at " + cat.objects[static_cast<std::size_t>(i)]);
            SparseVec rv;
            axpy(rv, omega(pv, *partner).inv(), *partner);
            rest.erase(partner);
            for (auto& v : rest) {
                SparseVec w = v;
                axpy(w, omega(v, pv), rv);
                axpy(w, -omega(v, rv), pv);
                v = std::move(w);
            }
            f.arrow_vectors[next] = pv;
            f.arrow_vectors[next + nq] = rv;
            ++next;
        }
    }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            auto v = ext1(i, j), w = ext1(j, i);
            const std::size_t m = v.size();
            std::vector<std::vector<Scalar>> g(m, std::vector<Scalar>(m, Scalar::zero_in(cat.field)));
            for (std::size_t a = 0; a < m; ++a)
                for (std::size_t b = 0; b < m; ++b) g[a][b] = pairing->value(w[a], v[b]);
            auto inv = m ? inverse(SparseMatrix::from_dense(g)) : std::optional<SparseMatrix>(SparseMatrix());
            if (!inv)
                throw std::invalid_argument("darboux_frame: pairing is degenerate between " + cat.objects[static_cast<std::size_t>(i)] + " and " +
                                            cat.objects[static_cast<std::size_t>(j)]);
            const SparseMatrix& ginv = *inv;
            // Dual basis: w'_k = sum_a ginv[k][a] w_a, so <w'_k, v_l> = delta.
            for (std::size_t k = 0; k < m; ++k) {
                SparseVec vk = unit_vec(v[k]), wk;
                for (std::size_t a = 0; a < m; ++a) axpy(wk, ginv.get(k, a), unit_vec(w[a]));
                if (k < (m + 1) / 2) {
                    f.arrow_vectors[next] = vk;
                    SparseVec neg;
                    axpy(neg, -Scalar::one_in(cat.field), wk);
                    f.arrow_vectors[next + nq] = neg;
                } else {
                    f.arrow_vectors[next] = wk;
                    f.arrow_vectors[next + nq] = vk;
                }
                ++next;
            }
        }

    // scale[i] from one arrow ending at i: mu_i has coefficient +1 on a a*
    // for an original arrow a, -1 on a* a.
    f.scale.assign(static_cast<std::size_t>(n), Scalar::one_in(cat.field));
    std::vector<bool> set(static_cast<std::size_t>(n), false);
    for (std::size_t a = 0; a < nq; ++a) {
        const auto& arr = f.quiver.arrows[a];
        for (int side = 0; side < 2; ++side) {
            int vertex = side == 0 ? arr.tgt : arr.src;
            if (set[static_cast<std::size_t>(vertex)]) continue;
            const SparseVec& x = side == 0 ? f.arrow_vectors[a] : f.arrow_vectors[a + nq];
            const SparseVec& y = side == 0 ? f.arrow_vectors[a + nq] : f.arrow_vectors[a];
            std::vector<Vec> args{Vec{}, Vec{}};
            for (const auto& [k, c] : x) args[0][static_cast<int>(k)] = c;
            for (const auto& [k, c] : y) args[1][static_cast<int>(k)] = c;
            Vec out = cat.apply(args);
            Scalar top = Scalar::zero_in(cat.field);
            for (const auto& [z, c] : out)
                if (cat.basis[static_cast<std::size_t>(z)].degree == 2) top = c;
            if (top.is_zero()) throw std::invalid_argument("darboux_frame: b_2 vanishes on a Darboux pair");
            f.scale[static_cast<std::size_t>(vertex)] = side == 0 ? top : -top;
            set[static_cast<std::size_t>(vertex)] = true;
        }
    }
    return f;
}

std::map<int, SparseMatrix> mc_point(const MCPresentation& p, const ArrowFrame& f, const MatrixRep& rep) {
    rep.validate();
    if (rep.quiver.arrows.size() != f.doubled.arrows.size()) throw std::invalid_argument("mc_point: representation is not of the doubled quiver");
    if (rep.d != p.d) throw std::invalid_argument("mc_point: dimension vector differs from the presentation");
    std::map<int, SparseMatrix> x;
    for (int c : p.coordinates)
        x.emplace(c, SparseMatrix(dim_of(p, p.tgt[static_cast<std::size_t>(c)]), dim_of(p, p.src[static_cast<std::size_t>(c)])));
    for (std::size_t a = 0; a < f.arrow_vectors.size(); ++a)
        for (const auto& [k, c] : f.arrow_vectors[a]) {
            auto& m = x.at(static_cast<int>(k));
            m = m + rep.mats[a].scaled(c);
        }
    return x;
}

// ---- scalar expansion ----

namespace {

using Poly = ScalarPolynomial;
using PolyMatrix = std::vector<std::vector<Poly>>;

void poly_add(Poly& acc, const std::vector<int>& mono, const Scalar& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = acc.terms.emplace(mono, c);
    if (!fresh) {
        it->second += c;
        if (it->second.is_zero()) acc.terms.erase(it);
    }
}

Poly poly_mul(const Poly& a, const Poly& b) {
    Poly out;
    for (const auto& [ma, ca] : a.terms)
        for (const auto& [mb, cb] : b.terms) {
            std::vector<int> m = ma;
            m.insert(m.end(), mb.begin(), mb.end());
            std::sort(m.begin(), m.end());
            poly_add(out, m, ca * cb);
        }
    return out;
}

PolyMatrix zeros(std::size_t r, std::size_t c) { return PolyMatrix(r, std::vector<Poly>(c)); }

PolyMatrix mat_mul(const PolyMatrix& a, const PolyMatrix& b, std::size_t inner, std::size_t cols) {
    PolyMatrix out = zeros(a.size(), cols);
    for (std::size_t r = 0; r < a.size(); ++r)
        for (std::size_t c = 0; c < cols; ++c)
            for (std::size_t k = 0; k < inner; ++k)
                for (const auto& [m, v] : poly_mul(a[r][k], b[k][c]).terms) poly_add(out[r][c], m, v);
    return out;
}

ScalarEquations evaluate(const MCPresentation& p, const std::map<int, PolyMatrix>& x, std::vector<std::string> variables) {
    ScalarEquations out;
    out.variables = std::move(variables);
    for (const auto& [y, monos] : p.equations) {
        std::size_t rows = dim_of(p, p.tgt[static_cast<std::size_t>(y)]), cols = dim_of(p, p.src[static_cast<std::size_t>(y)]);
        PolyMatrix acc = zeros(rows, cols);
        for (const auto& m : monos) {
            PolyMatrix prod = x.at(m.word.front());
            for (std::size_t k = 1; k < m.word.size(); ++k) {
                int w = m.word[k];
                prod = mat_mul(prod, x.at(w), dim_of(p, p.tgt[static_cast<std::size_t>(w)]), dim_of(p, p.src[static_cast<std::size_t>(w)]));
            }
            for (std::size_t r = 0; r < rows; ++r)
                for (std::size_t c = 0; c < cols; ++c)
                    for (const auto& [mono, v] : prod[r][c].terms) poly_add(acc[r][c], mono, m.coeff * v);
        }
        for (std::size_t r = 0; r < rows; ++r)
            for (std::size_t c = 0; c < cols; ++c)
                if (!acc[r][c].terms.empty())
                    out.equations.emplace_back(p.labels[static_cast<std::size_t>(y)] + "[" + std::to_string(r) + "," + std::to_string(c) + "]",
                                               std::move(acc[r][c]));
    }
    return out;
}

}  // namespace

std::string ScalarPolynomial::str(const std::vector<std::string>& names) const {
    if (terms.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [mono, c] : terms) {
        bool neg = c.is_rational() && c.q() < 0;
        Scalar mag = neg ? -c : c;
        os << (first ? (neg ? "-" : "") : (neg ? " - " : " + "));
        first = false;
        if (!mag.is_one() || mono.empty()) os << mag.str() << (mono.empty() ? "" : "*");
        for (std::size_t k = 0; k < mono.size(); ++k) os << (k ? "*" : "") << names[static_cast<std::size_t>(mono[k])];
    }
    return os.str();
}

ScalarEquations expand_equations(const MCPresentation& p) {
    std::vector<std::string> names;
    std::map<int, PolyMatrix> x;
    for (int c : p.coordinates) {
        std::size_t rows = dim_of(p, p.tgt[static_cast<std::size_t>(c)]), cols = dim_of(p, p.src[static_cast<std::size_t>(c)]);
        PolyMatrix m = zeros(rows, cols);
        for (std::size_t r = 0; r < rows; ++r)
            for (std::size_t k = 0; k < cols; ++k) {
                m[r][k].terms[{static_cast<int>(names.size())}] = Scalar(1);
                names.push_back(p.labels[static_cast<std::size_t>(c)] + "[" + std::to_string(r) + "," + std::to_string(k) + "]");
            }
        x.emplace(c, std::move(m));
    }
    return evaluate(p, x, std::move(names));
}

ScalarEquations arrow_equations(const MCPresentation& p, const ArrowFrame& f) {
    std::vector<std::string> names;
    std::map<int, PolyMatrix> x;
    for (int c : p.coordinates) x.emplace(c, zeros(dim_of(p, p.tgt[static_cast<std::size_t>(c)]), dim_of(p, p.src[static_cast<std::size_t>(c)])));
    for (std::size_t a = 0; a < f.arrow_vectors.size(); ++a) {
        const auto& arr = f.doubled.arrows[a];
        std::size_t rows = dim_of(p, arr.tgt), cols = dim_of(p, arr.src);
        std::vector<std::vector<int>> var(rows, std::vector<int>(cols));
        for (std::size_t r = 0; r < rows; ++r)
            for (std::size_t k = 0; k < cols; ++k) {
                var[r][k] = static_cast<int>(names.size());
                names.push_back(arr.id + "[" + std::to_string(r) + "," + std::to_string(k) + "]");
            }
        for (const auto& [xi, coeff] : f.arrow_vectors[a])
            for (std::size_t r = 0; r < rows; ++r)
                for (std::size_t k = 0; k < cols; ++k) poly_add(x.at(static_cast<int>(xi))[r][k], {var[r][k]}, coeff);
    }
    return evaluate(p, x, std::move(names));
}

}  // namespace twocy
