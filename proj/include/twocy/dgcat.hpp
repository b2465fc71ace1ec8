#pragma once

#include <vector>

#include "twocy/ainfinity.hpp"
#include "twocy/quiver.hpp"

namespace twocy {

/// Path weight used for truncation: each arrow weighs 1 - degree unless
/// weights are given explicitly.
std::vector<int> default_weights(const DGQuiverAlgebra& alg);

/// The dg path category of alg truncated at total weight <= max_weight: one
/// object per vertex, hom(i, j) spanned by the paths from i to j, b_1 = -d,
/// b_2(x, y) = (-1)^{|x|} xy. Requires a weight-homogeneous differential and
/// no relations.
AInfCategory path_category(const DGQuiverAlgebra& alg, int max_weight, const std::vector<int>& weights = {});

/// Koszul dual of an augmented dg category a (units at every object, b_n = 0
/// for n >= 3): the tensor category on letters dual to the augmentation ideal,
/// with the derivation dual to the bar differential, truncated at total weight
/// <= max_weight. letter_weight[x] is the weight of basis element x of a.
/// Its cohomology computes Ext between the simple modules in weights <= max_weight.
AInfCategory bar_dual_category(const AInfCategory& a, const std::vector<int>& letter_weight, int max_weight);

/// Path weights of path_category(alg, max_weight, weights), in basis order.
std::vector<int> path_category_weights(const DGQuiverAlgebra& alg, int max_weight, const std::vector<int>& weights = {});

}  // namespace twocy
