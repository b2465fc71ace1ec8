#pragma once

#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "twocy/ainfinity.hpp"
#include "twocy/nccalc.hpp"
#include "twocy/polynomial.hpp"
#include "twocy/quiver.hpp"
#include "twocy/repmod.hpp"

namespace twocy {

struct SigmaCertificate {
    std::vector<std::string> objects;
    std::map<std::tuple<int, int, int>, int> ext_dims;  // (src, tgt, degree) -> dim
    std::vector<int> genus;
    bool pass = false;
    std::vector<std::string> failures;

    int dim(int src, int tgt, int degree) const;
};

SigmaCertificate verify_sigma(const AInfCategory& cat);

/// Q with g_i loops at i and, for i < j, ceil(n/2) arrows i -> j and
/// floor(n/2) arrows j -> i where n = dim Ext^1(i, j); double(Q) then has n
/// arrows each way. Throws std::invalid_argument "not 2CY-consistent".
Quiver ext_quiver_halve(const SigmaCertificate& cert);

/// A word of degree-1 generators, read as the matrix product X_{w0} .. X_{wn}.
struct MatrixMonomial {
    Scalar coeff;
    std::vector<int> word;
};

/// Maurer-Cartan presentation of the d-fold inflation of a minimal category.
/// Generators are the duals of the basis elements of degree >= 1, each
/// standing for a d[tgt] x d[src] matrix of coordinates.
struct MCPresentation {
    DimensionVector d;
    int arity_cap = 0;
    bool exact = false;  // no arity above the cap can contribute
    std::vector<int> coordinates;  // degree-1 basis elements
    std::vector<int> generators;   // all basis elements of degree >= 1
    /// y -> sum_n b_n^vee restricted to inputs of degree >= 1.
    std::map<int, std::vector<MatrixMonomial>> differential;
    /// Degree-2 outputs with only degree-1 inputs: the classical equations.
    std::map<int, std::vector<MatrixMonomial>> equations;
    std::vector<std::string> labels;  // basis labels of the category
    std::vector<int> src, tgt;        // object endpoints per basis element
};

MCPresentation mc_presentation(const AInfCategory& cat, const DimensionVector& d, int arity_cap, bool certified_cubic = false);

/// Value of each classical equation at coordinate matrices X (indexed like
/// the category basis; entries for other elements are ignored).
std::map<int, SparseMatrix> mc_residuals(const MCPresentation& p, const std::map<int, SparseMatrix>& x);

/// Darboux frame matching the arrows of double(Q), Q the halved Ext-quiver,
/// to degree-1 classes: arrow_vectors[a] is the class (in basis coordinates)
/// assigned to arrow a, chosen so that the quadratic equation at object i
/// equals scale[i] * mu_i. Uses the category's pairing, or its trace pairing.
struct ArrowFrame {
    Quiver quiver;
    Quiver doubled;
    std::vector<SparseVec> arrow_vectors;
    std::vector<Scalar> scale;
};

ArrowFrame darboux_frame(const AInfCategory& cat);
/// Coordinates X_x = sum_a (arrow_vectors[a])_x A_a of a rep of double(Q).
std::map<int, SparseMatrix> mc_point(const MCPresentation& p, const ArrowFrame& f, const MatrixRep& rep);

/// Commutative polynomial in named scalar variables.
struct ScalarPolynomial {
    std::map<std::vector<int>, Scalar> terms;  // sorted variable indices -> coefficient
    std::string str(const std::vector<std::string>& names) const;
};

struct ScalarEquations {
    std::vector<std::string> variables;
    std::vector<std::pair<std::string, ScalarPolynomial>> equations;  // nonzero only
};

/// Classical equations entrywise, in the matrix coordinates of the
/// presentation ("label[r,c]").
ScalarEquations expand_equations(const MCPresentation& p);
/// The same equations pulled back to arrow coordinates of double(Q).
ScalarEquations arrow_equations(const MCPresentation& p, const ArrowFrame& f);

struct EulerComparison {
    Scalar lhs;  // 2 chi_Q(d, d)
    Scalar rhs;  // sum_n (-1)^n dim Ext^n(F, F)
    bool pass = false;
};

EulerComparison euler_compare(const Quiver& q, const DimensionVector& d, const SigmaCertificate& cert);

/// Lower bound on the constant term a_0 of a semistable part with leading
/// data (a_2, a_1): the table entry when present, else
/// kappa a_1^2 / a_2 + lambda a_2 + nu when the formula is enabled.
struct BogomolovParam {
    std::map<std::pair<Scalar, Scalar>, Scalar> table;
    bool use_formula = false;
    Scalar kappa, lambda, nu;

    std::optional<Scalar> bound(const Scalar& a2, const Scalar& a1) const;
};

/// Polynomials are read in the normalization P = sum_k a_k t^k / k!; each
/// part has a_d a positive multiple of lattice[d] and a_k in lattice[k] Z.
struct HNQuery {
    RatPolynomial p;
    RatPolynomial q_bound;
    std::vector<Scalar> lattice;  // per k, default 1
    std::optional<BogomolovParam> bogomolov;
};

using HNType = std::vector<RatPolynomial>;

/// a_k coefficients of a polynomial of degree <= deg.
std::vector<Scalar> a_coefficients(const RatPolynomial& p, int deg);
RatPolynomial from_a_coefficients(const std::vector<Scalar>& a);

/// Every HN type: parts summing to P, strictly decreasing reduced
/// polynomials, each reduced polynomial >= q_bound, lattice integrality and,
/// in degree 2, constant terms above the Bogomolov bound. Sorted by length
/// then coefficients.
std::vector<HNType> hn_enumerate(const HNQuery& query);
/// Re-checks one type against the defining inequalities.
bool hn_type_admissible(const HNQuery& query, const HNType& type, std::string* why = nullptr);

}  // namespace twocy
