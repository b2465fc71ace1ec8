#include "twocy/sparse.hpp"

#include <stdexcept>
#include <string>

namespace twocy {

void axpy(SparseVec& y, const Scalar& a, const SparseVec& x) {
    if (a.is_zero()) return;
    for (const auto& [k, v] : x) {
        auto it = y.find(k);
        if (it == y.end()) {
            Scalar t = a * v;
            if (!t.is_zero()) y.emplace(k, t);
        } else {
            it->second += a * v;
            if (it->second.is_zero()) y.erase(it);
        }
    }
}

DenseVec to_dense(const SparseVec& v, std::size_t n) {
    DenseVec d(n);
    for (const auto& [k, x] : v) {
        if (k >= n) throw std::out_of_range("sparse index out of range");
        d[k] = x;
    }
    return d;
}

SparseVec to_sparse(const DenseVec& v) {
    SparseVec s;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (!v[i].is_zero()) s.emplace(i, v[i]);
    return s;
}

SparseMatrix SparseMatrix::identity(std::size_t n) {
    SparseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1);
    return m;
}

SparseMatrix SparseMatrix::from_dense(const std::vector<std::vector<Scalar>>& rows) {
    std::size_t c = rows.empty() ? 0 : rows[0].size();
    SparseMatrix m(rows.size(), c);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != c) throw std::invalid_argument("ragged matrix rows");
        for (std::size_t j = 0; j < c; ++j) m.set(i, j, rows[i][j]);
    }
    return m;
}

void SparseMatrix::check(std::size_t r, std::size_t c) const {
    if (r >= rows_ || c >= cols_)
        throw std::out_of_range("matrix index (" + std::to_string(r) + "," + std::to_string(c) + ") out of range");
}

Scalar SparseMatrix::get(std::size_t r, std::size_t c) const {
    check(r, c);
    auto it = e_.find({r, c});
    return it == e_.end() ? Scalar() : it->second;
}

void SparseMatrix::set(std::size_t r, std::size_t c, const Scalar& v) {
    check(r, c);
    if (v.is_zero())
        e_.erase({r, c});
    else
        e_[{r, c}] = v;
}

void SparseMatrix::add(std::size_t r, std::size_t c, const Scalar& v) {
    check(r, c);
    if (v.is_zero()) return;
    auto it = e_.find({r, c});
    if (it == e_.end()) {
        e_.emplace(std::make_pair(r, c), v);
    } else {
        it->second += v;
        if (it->second.is_zero()) e_.erase(it);
    }
}

SparseMatrix SparseMatrix::transpose() const {
    SparseMatrix t(cols_, rows_);
    for (const auto& [rc, v] : e_) t.e_.emplace(std::make_pair(rc.second, rc.first), v);
    return t;
}

DenseVec SparseMatrix::apply(const DenseVec& v) const {
    if (v.size() != cols_) throw std::invalid_argument("vector length does not match matrix columns");
    DenseVec out(rows_);
    for (const auto& [rc, x] : e_) out[rc.first] += x * v[rc.second];
    return out;
}

SparseVec SparseMatrix::apply(const SparseVec& v) const {
    SparseVec out;
    for (const auto& [rc, x] : e_) {
        auto it = v.find(rc.second);
        if (it != v.end()) axpy(out, x * it->second, SparseVec{{rc.first, Scalar(1)}});
    }
    return out;
}

std::vector<SparseVec> SparseMatrix::row_vectors() const {
    std::vector<SparseVec> rows(rows_);
    for (const auto& [rc, x] : e_) rows[rc.first].emplace(rc.second, x);
    return rows;
}

SparseMatrix operator*(const SparseMatrix& a, const SparseMatrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product shape mismatch");
    SparseMatrix out(a.rows_, b.cols_);
    auto brows = b.row_vectors();
    for (const auto& [rc, x] : a.e_)
        for (const auto& [c, y] : brows[rc.second]) out.add(rc.first, c, x * y);
    return out;
}

SparseMatrix operator+(const SparseMatrix& a, const SparseMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("matrix sum shape mismatch");
    SparseMatrix out = a;
    for (const auto& [rc, x] : b.e_) out.add(rc.first, rc.second, x);
    return out;
}

SparseMatrix operator-(const SparseMatrix& a, const SparseMatrix& b) { return a + b.scaled(-1); }

SparseMatrix SparseMatrix::scaled(const Scalar& s) const {
    SparseMatrix out(rows_, cols_);
    if (s.is_zero()) return out;
    for (const auto& [rc, x] : e_) out.e_.emplace(rc, x * s);
    return out;
}

bool SparseMatrix::operator==(const SparseMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_ || e_.size() != o.e_.size()) return false;
    auto it = o.e_.begin();
    for (const auto& [rc, x] : e_) {
        if (rc != it->first || x != it->second) return false;
        ++it;
    }
    return true;
}

SparseVec Echelon::reduce(SparseVec v) const {
    std::vector<std::pair<const SparseVec*, Scalar>> steps;
    for (const auto& [c, x] : v) {
        auto it = by_pivot_.find(c);
        if (it != by_pivot_.end()) steps.emplace_back(&it->second, x);
    }
    for (const auto& [row, x] : steps) axpy(v, -x, *row);
    return v;
}

SparseVec Echelon::reduce_tracked(SparseVec v, SparseVec& coeffs) const {
    coeffs.clear();
    std::vector<std::pair<std::size_t, Scalar>> steps;
    for (const auto& [c, x] : v)
        if (by_pivot_.count(c)) steps.emplace_back(c, x);
    for (const auto& [c, x] : steps) {
        axpy(v, -x, by_pivot_.at(c));
        axpy(coeffs, x, combo_.at(c));
    }
    return v;
}

bool Echelon::insert(const SparseVec& v) {
    SparseVec coeffs;
    SparseVec rem = reduce_tracked(v, coeffs);
    std::size_t idx = inserted_++;
    if (rem.empty()) return false;
    // rem = v - sum coeffs_k input_k
    SparseVec combo{{idx, Scalar(1)}};
    axpy(combo, Scalar(-1), coeffs);
    std::size_t pc = rem.begin()->first;
    Scalar inv = rem.begin()->second.inv();
    SparseVec row;
    for (auto& [k, x] : rem) row.emplace(k, x * inv);
    SparseVec crow;
    for (auto& [k, x] : combo) crow.emplace(k, x * inv);
    for (auto& [p, r] : by_pivot_) {
        auto it = r.find(pc);
        if (it == r.end()) continue;
        Scalar a = it->second;
        axpy(r, -a, row);
        axpy(combo_[p], -a, crow);
    }
    by_pivot_.emplace(pc, std::move(row));
    combo_.emplace(pc, std::move(crow));
    return true;
}

std::vector<SparseVec> rref_rows(const SparseMatrix& m, std::vector<std::size_t>* pivots) {
    // Forward elimination without tracking; much cheaper than Echelon::insert.
    std::map<std::size_t, SparseVec> by_pivot;
    for (auto& row : m.row_vectors()) {
        SparseVec v = std::move(row);
        while (!v.empty()) {
            auto it = by_pivot.find(v.begin()->first);
            if (it == by_pivot.end()) break;
            axpy(v, -v.begin()->second, it->second);
        }
        if (v.empty()) continue;
        Scalar inv = v.begin()->second.inv();
        for (auto& [k, x] : v) x *= inv;
        std::size_t pc = v.begin()->first;
        by_pivot.emplace(pc, std::move(v));
    }
    // Back substitution, highest pivot first.
    for (auto it = by_pivot.rbegin(); it != by_pivot.rend(); ++it) {
        for (auto& [p, r] : by_pivot) {
            if (p >= it->first) break;
            auto f = r.find(it->first);
            if (f != r.end()) axpy(r, -Scalar(f->second), it->second);
        }
    }
    std::vector<SparseVec> out;
    if (pivots) pivots->clear();
    for (auto& [p, r] : by_pivot) {
        if (pivots) pivots->push_back(p);
        out.push_back(std::move(r));
    }
    return out;
}

std::size_t rank(const SparseMatrix& m) {
    std::map<std::size_t, SparseVec> by_pivot;
    for (auto& row : (m.rows() <= m.cols() ? m : m.transpose()).row_vectors()) {
        SparseVec v = std::move(row);
        while (!v.empty()) {
            auto it = by_pivot.find(v.begin()->first);
            if (it == by_pivot.end()) break;
            axpy(v, -v.begin()->second, it->second);
        }
        if (v.empty()) continue;
        Scalar inv = v.begin()->second.inv();
        for (auto& [k, x] : v) x *= inv;
        std::size_t pc = v.begin()->first;
        by_pivot.emplace(pc, std::move(v));
    }
    return by_pivot.size();
}

RankKernelImage rank_kernel_image(const SparseMatrix& m) {
    RankKernelImage out;
    std::vector<std::size_t> pivots;
    auto rows = rref_rows(m, &pivots);
    out.rank = rows.size();
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto p : pivots) is_pivot[p] = true;
    for (std::size_t f = 0; f < m.cols(); ++f) {
        if (is_pivot[f]) continue;
        DenseVec v(m.cols());
        v[f] = 1;
        for (std::size_t r = 0; r < rows.size(); ++r) {
            auto it = rows[r].find(f);
            if (it != rows[r].end()) v[pivots[r]] = -it->second;
        }
        out.kernel.push_back(std::move(v));
    }
    auto cols = m.transpose().row_vectors();
    for (auto p : pivots) out.image.push_back(to_dense(cols[p], m.rows()));
    // Self-verification: exact zero residuals.
    for (const auto& k : out.kernel)
        for (const auto& x : m.apply(k))
            if (!x.is_zero()) throw std::logic_error("kernel vector failed verification");
    return out;
}

std::optional<DenseVec> solve(const SparseMatrix& m, const DenseVec& b) {
    if (b.size() != m.rows()) throw std::invalid_argument("right-hand side length mismatch");
    SparseMatrix aug(m.rows(), m.cols() + 1);
    for (const auto& [rc, x] : m.entries()) aug.set(rc.first, rc.second, x);
    for (std::size_t i = 0; i < b.size(); ++i) aug.set(i, m.cols(), b[i]);
    std::vector<std::size_t> pivots;
    auto rows = rref_rows(aug, &pivots);
    DenseVec x(m.cols());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (pivots[r] == m.cols()) return std::nullopt;
        auto it = rows[r].find(m.cols());
        if (it != rows[r].end()) x[pivots[r]] = it->second;
    }
    return x;
}

std::optional<SparseMatrix> inverse(const SparseMatrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("inverse of a non-square matrix");
    std::size_t n = m.rows();
    SparseMatrix aug(n, 2 * n);
    for (const auto& [rc, x] : m.entries()) aug.set(rc.first, rc.second, x);
    for (std::size_t i = 0; i < n; ++i) aug.set(i, n + i, 1);
    std::vector<std::size_t> pivots;
    auto rows = rref_rows(aug, &pivots);
    if (rows.size() < n || (n > 0 && pivots[n - 1] != n - 1)) return std::nullopt;
    SparseMatrix inv(n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (const auto& [c, x] : rows[r])
            if (c >= n) inv.set(r, c - n, x);
    return inv;
}

}  // namespace twocy
