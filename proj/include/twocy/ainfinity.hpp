#pragma once

#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "twocy/scalar.hpp"

namespace twocy {

/// Basis element of hom(src, tgt). degree is the unshifted degree; the
/// shifted degree used by the operations b_n is degree - 1.
struct BasisElem {
    std::string label;
    int src = 0;
    int tgt = 0;
    int degree = 0;
};

/// Inputs of b_n in written order x_1 .. x_n: x_1 is composed last, so a
/// tuple is composable when src(x_k) == tgt(x_{k+1}).
using Tuple = std::vector<int>;
using Vec = std::map<int, Scalar>;
using OpTable = std::map<Tuple, Vec>;

void vec_add(Vec& v, int k, const Scalar& s);
void vec_axpy(Vec& y, const Scalar& a, const Vec& x);
Vec vec_scaled(const Vec& v, const Scalar& s);

/// Degree-zero pairing on shifted hom spaces: g[(x, y)] for x in hom(i,j),
/// y in hom(j,i).
struct CyclicPairing {
    int dim = 2;
    std::map<std::pair<int, int>, Scalar> g;
    Scalar value(int x, int y) const;
};

class TruncationError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

struct AInfCategory {
    FieldCtx field;
    std::vector<std::string> objects;
    std::vector<BasisElem> basis;
    std::map<int, OpTable> ops;  // arity -> b_n
    int arity_cap = 2;
    /// true when b_n = 0 is known for every n > arity_cap (e.g. dg input);
    /// otherwise arities above the cap are unknown.
    bool exact_above_cap = false;
    std::map<int, int> units;  // object -> basis index
    std::optional<CyclicPairing> pairing;

    int shifted(int x) const { return basis[static_cast<std::size_t>(x)].degree - 1; }
    int object_index(const std::string& label) const;
    int basis_index(const std::string& label) const;
    std::vector<int> hom(int src, int tgt) const;
    bool composable(const Tuple& t) const;
    bool known(int n) const { return n <= arity_cap || exact_above_cap; }
    const Vec* op(const Tuple& t) const;
    /// b_n applied multilinearly to vectors.
    Vec apply(const std::vector<Vec>& args) const;
    void add_op(const Tuple& t, int out, const Scalar& c);
    bool is_minimal() const;
    int max_nonzero_arity() const;
    /// Structural checks: endpoints, degree +1 of every b_n, composability,
    /// unit and pairing shapes. Throws std::invalid_argument.
    void validate() const;
    /// All composable tuples of length n, optionally with every entry drawn
    /// from allowed (sorted basis indices).
    std::vector<Tuple> composable_tuples(int n, const std::vector<int>* allowed = nullptr) const;
    std::string tuple_str(const Tuple& t) const;
    std::string vec_str(const Vec& v) const;
};

struct Witness {
    int arity = 0;
    Tuple tuple;
    Vec residual;
    std::string text;
};

struct CheckReport {
    bool pass = true;
    std::vector<Witness> witnesses;
    std::string message;
};

/// Sum over r+s+t = n of (-1)^{|sx_1|+..+|sx_r|} b_{r+1+t}(1^r (x) b_s (x) 1^t),
/// evaluated for n = 1..max_arity. Throws TruncationError when some b_k with
/// k <= max_arity is not known.
CheckReport check_relations(const AInfCategory& cat, int max_arity, std::size_t max_witnesses = 8);

enum class Unitality { strict, weak_only, non_unital };
std::string to_string(Unitality u);

struct UnitalityReport {
    Unitality kind = Unitality::non_unital;
    std::map<int, Vec> units;  // object -> unit vector found or declared
    std::vector<Witness> witnesses;
    std::string message;
};

UnitalityReport check_unitality(const AInfCategory& cat);

/// m_n(x_1..x_n) = -(-1)^{sum_q (n-q)|sx_q|} b_n(sx_1..sx_n); the map is an
/// involution, so both directions use the same sign.
std::map<int, OpTable> m_from_b(const std::vector<BasisElem>& basis, const std::map<int, OpTable>& b);
std::map<int, OpTable> b_from_m(const std::vector<BasisElem>& basis, const std::map<int, OpTable>& m);

struct AInfMorphism {
    std::shared_ptr<const AInfCategory> source;
    std::shared_ptr<const AInfCategory> target;
    std::vector<int> object_map;
    std::map<int, OpTable> comps;  // f_n: source tuples -> target vectors
    int arity_cap = 1;
    bool exact_above_cap = false;

    bool known(int n) const { return n <= arity_cap || exact_above_cap; }

    const Vec* comp(const Tuple& t) const;
    void add_comp(const Tuple& t, int out, const Scalar& c);
    void validate() const;
};

AInfMorphism identity_functor(std::shared_ptr<const AInfCategory> cat);
/// f o g (apply g first). Requires target(g) == source(f) (same object).
AInfMorphism compose(const AInfMorphism& f, const AInfMorphism& g);
CheckReport check_functor(const AInfMorphism& f, int max_arity, std::size_t max_witnesses = 8);

/// Homotopy data for a complex (d = m_1 = -b_1): d h + h d = 1 - i p,
/// h^2 = h i = p h = 0, p i = 1.
struct TransferData {
    std::vector<BasisElem> reps;
    std::vector<Vec> incl;      // per rep: vector in the big category
    std::vector<Vec> proj;      // per big basis element: vector in reps
    std::vector<Vec> homotopy;  // per big basis element
};

enum class TransferChoice { leftmost, rightmost };

TransferData auto_transfer(const AInfCategory& cat, TransferChoice choice = TransferChoice::leftmost);
/// Empty string when valid, otherwise the first violated identity.
std::string validate_transfer(const AInfCategory& cat, const TransferData& td);

struct MinimalModel {
    std::shared_ptr<AInfCategory> min;
    AInfMorphism incl;  // min -> cat
    TransferData data;
};

/// Homotopy transfer of a dg category onto its cohomology. With td null the
/// leftmost automatic choice is used.
MinimalModel minimal_model(std::shared_ptr<const AInfCategory> cat, const TransferData* td, int arity_cap);

struct DegreeSupport {
    int arity = 0;
    std::vector<std::pair<std::vector<int>, int>> tuples;  // input degrees -> output degree
};

/// Input degree tuples allowed by the degree constraint and the degrees
/// present in composable hom spaces. With strict units whose degree-0 part
/// is spanned by units, degree-0 inputs are excluded for n >= 3.
std::vector<DegreeSupport> degree_support_bound(const AInfCategory& cat, int max_arity, bool strict_units);

}  // namespace twocy
