#include "twocy/koszul.hpp"

#include <algorithm>
#include <stdexcept>

namespace twocy {

int koszul_sign_int(const std::vector<int>& degrees, const std::vector<std::size_t>& perm) {
    const std::size_t n = degrees.size();
    if (perm.size() != n) throw std::invalid_argument("permutation length differs from degree list");
    std::vector<bool> seen(n, false);
    for (auto p : perm) {
        if (p >= n || seen[p]) throw std::invalid_argument("malformed permutation");
        seen[p] = true;
    }
    int sign = 1;
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = k + 1; l < n; ++l)
            if (perm[k] > perm[l] && (degrees[perm[k]] & 1) && (degrees[perm[l]] & 1)) sign = -sign;
    return sign;
}

Scalar koszul_sign(const std::vector<int>& degrees, const std::vector<std::size_t>& perm) {
    return Scalar(koszul_sign_int(degrees, perm));
}

std::vector<int> rotate_word(const std::vector<int>& word, std::size_t shift) {
    std::vector<int> out(word.begin() + static_cast<long>(shift), word.end());
    out.insert(out.end(), word.begin(), word.begin() + static_cast<long>(shift));
    return out;
}

int rotation_sign(const std::vector<std::pair<int, int>>& bidegrees, std::size_t shift) {
    long p_pre = 0, q_pre = 0, p_suf = 0, q_suf = 0;
    for (std::size_t k = 0; k < bidegrees.size(); ++k) {
        if (k < shift) {
            p_pre += bidegrees[k].first;
            q_pre += bidegrees[k].second;
        } else {
            p_suf += bidegrees[k].first;
            q_suf += bidegrees[k].second;
        }
    }
    return swap_sign(p_pre, p_suf) * swap_sign(q_pre, q_suf);
}

std::optional<CyclicRep> cyclic_canonical(const std::vector<int>& word, const std::vector<std::pair<int, int>>& bidegrees) {
    if (word.size() != bidegrees.size()) throw std::invalid_argument("one bidegree per letter is required");
    if (word.empty()) return CyclicRep{};
    CyclicRep best;
    std::vector<int> best_word = word;
    bool conflict = false;
    for (std::size_t k = 1; k < word.size(); ++k) {
        auto r = rotate_word(word, k);
        int s = rotation_sign(bidegrees, k);
        if (r < best_word) {
            best_word = std::move(r);
            best = {k, s};
            conflict = false;
        } else if (r == best_word && s != best.sign) {
            conflict = true;
        }
    }
    if (conflict) return std::nullopt;
    return best;
}

}  // namespace twocy
