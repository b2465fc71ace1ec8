#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "twocy/polynomial.hpp"
#include "twocy/quiver.hpp"
#include "twocy/sparse.hpp"

namespace twocy {

/// One matrix per arrow, of shape d[tgt] x d[src], over a single field.
struct MatrixRep {
    Quiver quiver;
    DimensionVector d;
    std::vector<SparseMatrix> mats;
    FieldCtx field;

    static MatrixRep zero(const Quiver& q, const DimensionVector& d, const FieldCtx& f = FieldCtx::rationals());
    long total_dim() const;
    /// Throws std::invalid_argument naming the offending "mats[k]".
    void validate() const;
    /// Matrix of a path (identity for an idempotent).
    SparseMatrix eval(const Path& p) const;
    /// Reduce every entry into f; throws FieldError on a denominator divisible by f.p.
    MatrixRep reduce(const FieldCtx& f) const;
    bool operator==(const MatrixRep& o) const { return d == o.d && mats == o.mats && field == o.field; }
};

struct RelationResidual {
    std::string label;
    SparseMatrix residual;
};

struct RelationReport {
    bool pass = true;
    std::vector<RelationResidual> residuals;  // nonzero ones only
};

/// Evaluates the relations of alg plus d(u) for every degree -1 generator u;
/// generators of nonzero degree act by zero. The rep quiver must contain the
/// degree-zero generators of alg under the same indices.
RelationReport eval_relations(const MatrixRep& rep, const DGQuiverAlgebra& alg);

/// Multiplicative relation prod_a (1 + a a*)^{eps(a)} = sum_i q_i e_i over a
/// doubled quiver, the product taken in the given arrow order (default: index
/// order). Throws std::invalid_argument when some 1 + A A* is singular.
RelationReport eval_multiplicative(const MatrixRep& rep, const std::vector<Scalar>& q, const std::vector<int>& order = {});

/// Vertex blocks of sum_a [A, A*] for a rep over a doubled quiver.
std::vector<SparseMatrix> moment_map(const MatrixRep& rep);

/// Subalgebra of End(sum_i k^{d_i}) generated by the vertex idempotents and
/// the arrow matrices, as a basis of N x N matrices (N = total dim).
struct MatrixAlgebra {
    std::size_t n = 0;
    std::vector<SparseMatrix> basis;
};

MatrixAlgebra acting_algebra(const MatrixRep& rep);
/// Jacobson radical over the rationals: the null space of (x, y) -> tr(xy),
/// which is the radical for any faithfully acting algebra in characteristic 0.
MatrixAlgebra radical_char0(const MatrixAlgebra& alg);

/// M, JM, J^2 M, .. down to 0; layers[k][i] is the dimension of J^k M at vertex i.
struct RadicalFiltration {
    std::vector<DimensionVector> layers;
};

struct Semisimplification {
    MatrixRep out;
    RadicalFiltration filtration;
    /// Per vertex, columns form the adapted basis of k^{d_i}: top layer first,
    /// then deeper layers. out is the associated graded in this basis.
    std::vector<SparseMatrix> basis;
};

/// Associated graded of the radical filtration (rationals), or the direct sum
/// of brute-force Jordan-Holder factors (prime fields).
Semisimplification semisimplify_detailed(const MatrixRep& rep);
MatrixRep semisimplify(const MatrixRep& rep);

/// Intertwiners M -> N as tuples of per-vertex matrices.
std::vector<std::vector<SparseMatrix>> hom_space(const MatrixRep& m, const MatrixRep& n);

struct IsotypicBlock {
    MatrixRep simple;
    int multiplicity = 0;
    /// Set when End(simple) is larger than the ground field: the summand is
    /// only Galois-irreducible and splits over the extension cut out by this
    /// minimal polynomial.
    std::optional<RatPolynomial> galois;
    /// False when simplicity rests on a failed search for zero divisors in a
    /// noncommutative endomorphism algebra rather than on a proof.
    bool certified = true;
};

/// Requires zero radical. Blocks are pairwise non-isomorphic, in order of
/// first appearance.
std::vector<IsotypicBlock> isotypic_decompose(const MatrixRep& rep);

using StabilityParam = std::vector<Scalar>;
Scalar slope(const DimensionVector& d, const StabilityParam& zeta);

/// A subrepresentation as per-vertex bases (columns).
struct Subrep {
    DimensionVector d;
    std::vector<SparseMatrix> basis;
};

/// Smallest subrep containing the given homogeneous vectors (vertex, vector).
Subrep generated_subrep(const MatrixRep& rep, const std::vector<std::pair<int, DenseVec>>& gens);
MatrixRep restrict_to(const MatrixRep& rep, const Subrep& s);
MatrixRep quotient_by(const MatrixRep& rep, const Subrep& s);

enum class Semistability { stable, semistable, unstable };

struct StabilityVerdict {
    Semistability kind = Semistability::stable;
    std::optional<Subrep> destabilizer;  // maximal slope, then maximal dimension
    std::size_t subreps_seen = 0;
};

/// Exhaustive over all subreps of a rep over F_p. Throws std::invalid_argument
/// when the total dimension exceeds bound or the field is not prime.
StabilityVerdict semistable_bruteforce(const MatrixRep& rep, const StabilityParam& zeta, long bound = 6);
/// Every subrep, by closure over homogeneous generators (F_p only).
std::vector<Subrep> all_subreps(const MatrixRep& rep, long bound = 6);

/// Composition factors over F_p, bottom of a composition series first.
std::vector<MatrixRep> jh_factors_bruteforce(const MatrixRep& rep, long bound = 6);
/// Multiset equality of simple reps up to isomorphism.
bool same_simple_multiset(const std::vector<MatrixRep>& a, const std::vector<MatrixRep>& b);

/// Point of mu_d^{-1}(0) over a doubled quiver: the arrows of the original
/// quiver get random entries, the starred ones a random solution of the
/// (linear) moment equation.
MatrixRep sample_moment_fiber(const Quiver& q, const DimensionVector& d, const FieldCtx& f, std::uint64_t seed);

}  // namespace twocy
