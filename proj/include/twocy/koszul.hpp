#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "twocy/scalar.hpp"

namespace twocy {

/// Sign of permuting graded elements. perm[k] is the index of the input
/// element placed at output position k; each inverted pair contributes
/// (-1)^{d_i d_j}. Throws std::invalid_argument if perm is not a bijection.
int koszul_sign_int(const std::vector<int>& degrees, const std::vector<std::size_t>& perm);
Scalar koszul_sign(const std::vector<int>& degrees, const std::vector<std::size_t>& perm);

/// Sign of moving a block of total degree a past a block of total degree b.
inline int swap_sign(long a, long b) { return ((a & 1) && (b & 1)) ? -1 : 1; }

/// Cyclic words under graded commutators with the bigraded rule: moving a
/// prefix of bidegree (P, Q) past a suffix of bidegree (P', Q') costs
/// (-1)^{PP' + QQ'}. word ~ sign * rotate(word, shift), where the rotation is
/// the lexicographically smallest. nullopt when a rotation fixing the word has
/// sign -1, so the class is zero.
struct CyclicRep {
    std::size_t shift = 0;
    int sign = 1;
};
std::optional<CyclicRep> cyclic_canonical(const std::vector<int>& word, const std::vector<std::pair<int, int>>& bidegrees);
std::vector<int> rotate_word(const std::vector<int>& word, std::size_t shift);
/// Sign of rotate_word(word, shift) relative to word.
int rotation_sign(const std::vector<std::pair<int, int>>& bidegrees, std::size_t shift);

}  // namespace twocy
