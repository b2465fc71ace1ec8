#pragma once

#include <map>
#include <string>
#include <vector>

#include "twocy/ainfinity.hpp"

namespace twocy {

/// A length-n Hochschild chain is a cyclically composable tuple
/// (x_1, .., x_n) of shifted factors, src(x_n) == tgt(x_1), placed in
/// degree sum_q |sx_q| + 1. Length 1 is hom(i, i) in its own degree.
using Chain = std::map<Tuple, Scalar>;

int chain_degree(const AInfCategory& cat, const Tuple& t);
bool cyclically_composable(const AInfCategory& cat, const Tuple& t);
/// All cyclically composable tuples of length n.
std::vector<Tuple> hochschild_basis(const AInfCategory& cat, int n);

/// F_n: moves the last factor to the front with its Koszul sign.
Chain cyclic_rotate(const AInfCategory& cat, const Chain& c);
/// b = sum over every cyclic window of b_k, including b_1 and the windows
/// through the end of the tuple. Throws TruncationError when some b_k with
/// k <= max_length is unknown.
Chain hochschild_b(const AInfCategory& cat, const Chain& c, int max_length);
/// B = (1 - F_{n+1}) eta N with N = sum_i F_n^i. Needs units on every
/// object and length <= max_length - 1.
Chain connes_B(const AInfCategory& cat, const Chain& c, int max_length);

/// Image in coker(1 - F): signed lexicographically minimal rotations,
/// dropping classes killed by an odd self-rotation.
Chain cyclic_class(const AInfCategory& cat, const Chain& c);
std::vector<Tuple> cyclic_basis(const AInfCategory& cat, int n);

struct WindowedHomology {
    int max_length = 0;
    int margin = 1;
    bool cyclic = false;
    /// Homology of the subcomplex of lengths <= max_length, per degree.
    std::map<int, int> dims;
    /// Degree d is stable when dim H^d is the same for every cutoff
    /// max_length - margin .. max_length.
    std::map<int, bool> stable;
    /// When every b_k with k != 2 vanishes, b lowers the length by exactly
    /// one and homology splits by length: (length, degree) -> dim for
    /// lengths <= max_length - margin.
    bool length_graded = false;
    std::map<std::pair<int, int>, int> by_length;
    std::map<std::pair<int, int>, int> chain_dims;  // (length, degree) -> dim of the chain space
};

/// Throws std::invalid_argument when the category fails its relations up to
/// max_length + 1.
WindowedHomology windowed_homology(const AInfCategory& cat, int max_length, int margin, bool cyclic);

}  // namespace twocy
