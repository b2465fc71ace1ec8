#pragma once

#include <map>
#include <string>
#include <vector>

#include "twocy/scalar.hpp"

namespace twocy {

struct Arrow {
    std::string id;
    int src = 0;
    int tgt = 0;
};

/// Finite quiver. Vertices are indexed 0..n-1 and carry labels.
struct Quiver {
    std::vector<std::string> vertices;
    std::vector<Arrow> arrows;
    /// Involution a <-> a* when the quiver is a double; empty otherwise.
    std::vector<int> star;

    int vertex_index(const std::string& label) const;
    int arrow_index(const std::string& id) const;
    void validate() const;  // throws std::invalid_argument
    static Quiver jordan();
    static Quiver a2();
    static Quiver loops(int g);
};

struct GradedQuiver {
    Quiver quiver;
    std::vector<int> degree;  // per arrow
};

using DimensionVector = std::vector<long>;

/// A path a_k ... a_1, stored in written order: arrows[0] is applied last.
/// An empty arrow list is the idempotent at vertex src == tgt.
struct Path {
    int tgt = 0;
    int src = 0;
    std::vector<int> arrows;

    static Path idempotent(int v) { return {v, v, {}}; }
    auto operator<=>(const Path&) const = default;
};

using PathCombo = std::map<Path, Scalar>;

void add_term(PathCombo& c, const Path& p, const Scalar& s);
/// x * y, i.e. y first then x. Throws on non-composable paths.
Path concat(const Path& x, const Path& y);
bool composable(const Path& x, const Path& y);
std::string path_str(const Quiver& q, const Path& p);

struct DGQuiverAlgebra {
    GradedQuiver gens;
    std::map<int, PathCombo> differential;  // arrow index -> d(arrow)
    std::vector<PathCombo> relations;

    int path_degree(const Path& p) const;
    /// Leibniz extension of the differential to a path.
    PathCombo d(const Path& p) const;
    PathCombo d(const PathCombo& c) const;
};

Quiver double_quiver(const Quiver& q);
Scalar euler_form(const Quiver& q, const DimensionVector& d, const DimensionVector& e);

/// Vertex components e_i (sum_a [a, a*]) e_i over the arrows of q, written in
/// the double(q) arrow indexing (a has index k, a* index k + |Q_1|).
std::vector<PathCombo> preprojective_relations(const Quiver& q);
DGQuiverAlgebra preprojective(const Quiver& q);
DGQuiverAlgebra derived_preprojective(const Quiver& q);

struct DGReport {
    bool ok = true;
    std::string message;
};

/// Checks degree +1, endpoint compatibility, and d^2 = 0 on all paths of
/// length <= max_length.
DGReport check_dg(const DGQuiverAlgebra& alg, int max_length);

/// All composable paths (including idempotents) whose weight is at most
/// max_weight; weight of an arrow is weights[a] (must be positive).
std::vector<Path> enumerate_paths(const Quiver& q, const std::vector<int>& weights, int max_weight);

}  // namespace twocy
