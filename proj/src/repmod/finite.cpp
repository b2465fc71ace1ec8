#include <set>

#include "internal.hpp"
#include "twocy/repmod.hpp"

namespace twocy {

using namespace detail;

namespace {

void require_small_prime(const MatrixRep& rep, long bound) {
    rep.validate();
    if (rep.field.is_rational()) throw std::invalid_argument("brute force needs a prime field");
    if (rep.total_dim() > bound)
        throw std::invalid_argument("bound exceeded: total dimension " + std::to_string(rep.total_dim()) + " > " + std::to_string(bound));
}

// Nonzero vectors of F_p^n with leading nonzero entry 1.
std::vector<DenseVec> projective_points(std::size_t n, std::uint64_t p) {
    std::vector<DenseVec> out;
    for (std::size_t lead = 0; lead < n; ++lead) {
        std::size_t free = n - lead - 1;
        std::uint64_t count = 1;
        for (std::size_t k = 0; k < free; ++k) count *= p;
        for (std::uint64_t code = 0; code < count; ++code) {
            DenseVec v(n, Scalar::mod(p, 0));
            v[lead] = Scalar::mod(p, 1);
            std::uint64_t c = code;
            for (std::size_t k = lead + 1; k < n; ++k) {
                v[k] = Scalar::mod(p, static_cast<std::int64_t>(c % p));
                c /= p;
            }
            out.push_back(std::move(v));
        }
    }
    return out;
}

std::vector<std::pair<int, DenseVec>> homogeneous_points(const MatrixRep& rep) {
    std::vector<std::pair<int, DenseVec>> out;
    for (std::size_t i = 0; i < rep.d.size(); ++i)
        for (auto& v : projective_points(static_cast<std::size_t>(rep.d[i]), rep.field.p)) out.emplace_back(static_cast<int>(i), std::move(v));
    return out;
}

std::vector<std::pair<int, DenseVec>> spanning(const Subrep& s) {
    std::vector<std::pair<int, DenseVec>> out;
    for (std::size_t i = 0; i < s.basis.size(); ++i)
        for (std::size_t c = 0; c < s.basis[i].cols(); ++c) out.emplace_back(static_cast<int>(i), column(s.basis[i], c));
    return out;
}

bool contains(const Subrep& s, int v, const DenseVec& x) {
    Echelon e;
    const auto& b = s.basis[static_cast<std::size_t>(v)];
    for (std::size_t c = 0; c < b.cols(); ++c) e.insert(to_sparse(column(b, c)));
    return e.in_span(to_sparse(x));
}

using SubrepKey = std::vector<std::vector<std::pair<std::pair<std::size_t, std::size_t>, std::uint64_t>>>;

SubrepKey key_of(const Subrep& s) {
    SubrepKey k;
    for (const auto& b : s.basis) {
        k.emplace_back();
        for (const auto& [rc, x] : b.entries()) k.back().push_back({rc, x.residue()});
    }
    return k;
}

long total(const DimensionVector& d) {
    long t = 0;
    for (long x : d) t += x;
    return t;
}

}  // namespace

std::vector<Subrep> all_subreps(const MatrixRep& rep, long bound) {
    require_small_prime(rep, bound);
    auto points = homogeneous_points(rep);
    std::vector<Subrep> out{generated_subrep(rep, {})};
    std::set<SubrepKey> seen{key_of(out[0])};
    for (std::size_t head = 0; head < out.size(); ++head)
        for (const auto& [v, x] : points) {
            if (contains(out[head], v, x)) continue;
            auto gens = spanning(out[head]);
            gens.emplace_back(v, x);
            Subrep s = generated_subrep(rep, gens);
            if (seen.insert(key_of(s)).second) out.push_back(std::move(s));
        }
    return out;
}

StabilityVerdict semistable_bruteforce(const MatrixRep& rep, const StabilityParam& zeta, long bound) {
    require_small_prime(rep, bound);
    const Scalar mine = slope(rep.d, zeta);
    StabilityVerdict verdict;
    bool tie = false;
    std::optional<Scalar> best;
    for (auto& s : all_subreps(rep, bound)) {
        long dim = total(s.d);
        if (dim == 0 || dim == rep.total_dim()) continue;
        ++verdict.subreps_seen;
        Scalar sl = slope(s.d, zeta);
        if (sl == mine) tie = true;
        if (sl <= mine) continue;
        if (!best || sl > *best || (sl == *best && dim > total(verdict.destabilizer->d))) {
            best = sl;
            verdict.destabilizer = std::move(s);
        }
    }
    verdict.kind = verdict.destabilizer ? Semistability::unstable : tie ? Semistability::semistable : Semistability::stable;
    return verdict;
}

std::vector<MatrixRep> jh_factors_bruteforce(const MatrixRep& rep, long bound) {
    require_small_prime(rep, bound);
    std::vector<MatrixRep> factors;
    MatrixRep cur = rep;
    while (cur.total_dim() > 0) {
        // A generated subrep of least dimension is simple.
        std::optional<Subrep> best;
        for (const auto& pt : homogeneous_points(cur)) {
            Subrep s = generated_subrep(cur, {pt});
            if (!best || total(s.d) < total(best->d)) best = std::move(s);
            if (total(best->d) == 1) break;
        }
        factors.push_back(restrict_to(cur, *best));
        cur = quotient_by(cur, *best);
    }
    return factors;
}

bool same_simple_multiset(const std::vector<MatrixRep>& a, const std::vector<MatrixRep>& b) {
    if (a.size() != b.size()) return false;
    std::vector<bool> used(b.size(), false);
    for (const auto& x : a) {
        bool found = false;
        for (std::size_t j = 0; j < b.size() && !found; ++j)
            if (!used[j] && b[j].d == x.d && !hom_space(x, b[j]).empty()) used[j] = found = true;
        if (!found) return false;
    }
    return true;
}

}  // namespace twocy
