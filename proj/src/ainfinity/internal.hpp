#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "twocy/ainfinity.hpp"

namespace twocy::detail {

/// Entries of an operation table indexed by (position, element).
struct OuterIndex {
    explicit OuterIndex(const OpTable& table);
    std::map<std::pair<std::size_t, int>, std::vector<std::pair<const Tuple*, const Vec*>>> at;
};

/// acc[x_1..x_n] += scale * sum_r (-1)^{|sx_1|+..+|sx_r|} outer(x_1..x_r, inner(..), ..).
void accumulate_insertions(const AInfCategory& cat, const OpTable& inner, const OpTable& outer, std::size_t outer_arity,
                           std::map<Tuple, Vec>& acc, const Scalar& scale);

void collect_witnesses(const AInfCategory& cat, int arity, const std::map<Tuple, Vec>& acc, CheckReport& report,
                       std::size_t max_witnesses, const std::string& what);

}  // namespace twocy::detail
