#pragma once

#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "twocy/ainfinity.hpp"
#include "twocy/sparse.hpp"

namespace twocy {

/// Letters of the formal manifold of a category: theta_x dual to the shifted
/// basis element x (code 2x + 1) and its differential d theta_x (code 2x).
/// theta_x has internal degree 1 - deg(x); d adds form degree 1.
/// A word lists letters in tuple order, so theta_{x_1} .. theta_{x_n} is dual
/// to the input (x_1, .., x_n) of b_n. The constant at object o is the
/// one-entry word {-1 - o}.
struct Alphabet {
    std::vector<std::string> labels;
    std::vector<int> src, tgt, degree;
    std::vector<bool> unit;
    std::size_t objects = 0;

    static Alphabet of(const AInfCategory& cat);
    std::size_t size() const { return labels.size(); }
    int internal(int code) const { return 1 - degree[static_cast<std::size_t>(code / 2)]; }
};

inline int theta(int x) { return 2 * x + 1; }
inline int dtheta(int x) { return 2 * x; }
inline int letter_of(int code) { return code / 2; }
inline bool is_d(int code) { return code % 2 == 0; }

using Word = std::vector<int>;
using Terms = std::map<Word, Scalar>;

/// Element of Omega(X) (cyclic = false) or of its cyclic quotient. Functions
/// are forms of form degree 0. Words longer than order_cap are dropped and
/// flagged through truncated.
struct NCForm {
    Terms terms;
    bool cyclic = false;
    int order_cap = 6;
    bool truncated = false;

    bool zero() const { return terms.empty(); }
    /// Component with exactly k letters.
    NCForm order(int k) const;
    NCForm orders_from(int k) const;
    bool operator==(const NCForm& o) const { return terms == o.terms && cyclic == o.cyclic; }
};
using NCFunction = NCForm;

/// Derivation of the function algebra given on generators; degree is the
/// internal degree. Contraction and Lie derivative truncate at the cap of
/// the form they act on.
struct VectorField {
    std::map<int, Terms> images;  // letter index x -> image of theta_x
    int degree = 0;
    int order_cap = 6;
};

/// Formal automorphism of O(X): theta_x -> images[x].
struct Automorphism {
    std::map<int, Terms> images;
    int order_cap = 6;
};

std::string word_str(const Alphabet& a, const Word& w);
std::string form_str(const Alphabet& a, const NCForm& f);
int word_order(const Word& w);
/// Internal degree, form degree.
std::pair<int, int> word_bidegree(const Alphabet& a, const Word& w);
bool word_composable(const Alphabet& a, const Word& w);
bool word_closed(const Alphabet& a, const Word& w);

/// Adds c * w to f, canonicalizing when f is cyclic.
void add_word(const Alphabet& a, NCForm& f, const Word& w, const Scalar& c);
NCForm make_form(const Alphabet& a, const Terms& t, bool cyclic, int order_cap);
NCForm operator+(const NCForm& x, const NCForm& y);
NCForm operator-(const NCForm& x, const NCForm& y);
NCForm scaled(const NCForm& f, const Scalar& s);
/// Product of noncyclic forms (concatenation, dropping non-composable pairs).
NCForm multiply(const Alphabet& a, const NCForm& x, const NCForm& y);
NCForm cyclic_image(const Alphabet& a, const NCForm& f);

NCForm de_rham(const Alphabet& a, const NCForm& f);
NCForm contraction(const Alphabet& a, const VectorField& v, const NCForm& f);
NCForm lie_derivative(const Alphabet& a, const VectorField& v, const NCForm& f);
/// v applied to a function.
NCForm apply_field(const Alphabet& a, const VectorField& v, const NCForm& f);
/// theta -> image, d theta -> d(image); algebra morphism, no signs.
NCForm substitute(const Alphabet& a, const Automorphism& phi, const NCForm& f);
VectorField euler_field(const Alphabet& a, int order_cap);
/// Commutator [v, w] on generators.
VectorField bracket(const Alphabet& a, const VectorField& v, const VectorField& w);

/// Q restricted to generators is the sum of the duals of b_n:
/// Q(theta_z) = sum_t [b_n(t)]_z theta_{t_1} .. theta_{t_n}.
VectorField category_to_vectorfield(const AInfCategory& cat, int order_cap);
/// Inverse of category_to_vectorfield on a template carrying objects,
/// basis, units and pairing.
AInfCategory vectorfield_to_category(const AInfCategory& shape, const VectorField& q, int arity_cap);

/// omega = sum_{x,y} g(x,y)/2 d theta_x d theta_y in the cyclic quotient.
/// Throws on degenerate or non graded-symmetric pairings.
NCForm omega_from_pairing(const Alphabet& a, const CyclicPairing& p, int order_cap);
/// Matrix of iota_X omega = sum_b (sum_a X(theta_a) C[a][b]) d theta_b for a
/// constant 2-form.
SparseMatrix omega_matrix(const Alphabet& a, const NCForm& omega);
/// Normal form sum_b G_b d theta_b of a cyclic 1-form.
std::map<int, Terms> one_form_normal(const Alphabet& a, const NCForm& alpha);
/// The unique X with iota_X omega = alpha (omega constant, nondegenerate).
VectorField solve_contraction(const Alphabet& a, const NCForm& omega, const NCForm& alpha, int degree);
VectorField hamiltonian(const Alphabet& a, const NCForm& omega, const NCFunction& f);
/// {f, g} = X_f(g) with iota_{X_f} omega = d f.
NCFunction poisson_bracket(const Alphabet& a, const NCFunction& f, const NCFunction& g, const NCForm& omega);
int function_degree(const Alphabet& a, const NCForm& f);

/// L_Q omega = 0 on arities <= max_arity, with witnesses.
CheckReport check_cyclicity(const AInfCategory& cat, int max_arity, std::size_t max_witnesses = 8);

/// W with d W = iota_Q omega, W_k = (1/k) iota_E (iota_Q omega)_k. Throws
/// std::invalid_argument("not cyclic: ...") when the pairing is not cyclic.
NCFunction potential_from_category(const AInfCategory& cat, int order_cap);
AInfCategory category_from_potential(const AInfCategory& shape, const NCFunction& w);
/// True iff the function avoids every unit-dual letter.
bool is_reduced(const Alphabet& a, const NCForm& f);

/// exp({S, -}) on generators up to order_cap. Requires S of order >= 3
/// and characteristic zero.
Automorphism hamiltonian_exp(const Alphabet& a, const NCFunction& s, const NCForm& omega, int order_cap);
Automorphism exp_field(const Alphabet& a, const VectorField& v, int order_cap);
Automorphism identity_automorphism(const Alphabet& a, int order_cap);
/// (f o g)(theta) = f applied to the words of g(theta).
Automorphism compose(const Alphabet& a, const Automorphism& f, const Automorphism& g);

struct StrictifyResult {
    std::shared_ptr<AInfCategory> cat;
    AInfMorphism iso;  // input -> output
    NCFunction potential_before;
    NCFunction potential;
    std::vector<NCFunction> steps;  // S_n, one per order
    bool identity = true;
    bool omega_preserved = false;
};

/// Strictification of cyclic units: successive symplectic automorphisms
/// exp({S_n, -}) making W_4..W_cap reduced.
StrictifyResult strictify_units(const AInfCategory& cat, int order_cap);

struct DarbouxResult {
    Automorphism phi;
    NCForm omega;  // pullback, constant up to the cap
    std::vector<VectorField> steps;
};

/// Order-by-order Moser correction: X_m with iota_{X_m} omega_0 = -(1/m) iota_E omega_m.
DarbouxResult darboux_normalize(const Alphabet& a, const NCForm& omega, int order_cap);

/// Pairing <x, y> = lambda_o [b_2(x, y)]_{top_o} with the top class of each
/// object and scalars lambda making it graded symmetric. nullopt if the
/// category does not have that shape.
std::optional<CyclicPairing> trace_pairing(const AInfCategory& cat);

/// Ext dimension profile of a minimal category against the Sigma shape:
/// End^0 = End^2 = k, End^1 of even dimension 2g, symmetric Ext^1 between
/// distinct objects, nothing else.
struct SigmaProfile {
    bool pass = false;
    std::vector<std::string> failures;
    std::vector<int> genus;                             // per object
    std::map<std::tuple<int, int, int>, int> ext_dims;  // (src, tgt, degree) -> dim
};

SigmaProfile sigma_profile(const AInfCategory& cat);

struct SigmaFormalityCertificate {
    bool pass = false;
    std::vector<std::string> failures;
    std::vector<int> genus;  // per object
    std::map<std::tuple<int, int, int>, int> ext_dims;
    std::vector<DegreeSupport> support;
    bool cubic = false;
    StrictifyResult strict;
    std::string argument;
};

SigmaFormalityCertificate certify_sigma_formality(const AInfCategory& cat, int order_cap);

}  // namespace twocy
