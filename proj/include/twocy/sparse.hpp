#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "twocy/scalar.hpp"

namespace twocy {

using SparseVec = std::map<std::size_t, Scalar>;
using DenseVec = std::vector<Scalar>;

void axpy(SparseVec& y, const Scalar& a, const SparseVec& x);  // y += a x, dropping zeros
DenseVec to_dense(const SparseVec& v, std::size_t n);
SparseVec to_sparse(const DenseVec& v);

class SparseMatrix {
   public:
    SparseMatrix() = default;
    SparseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {}
    static SparseMatrix identity(std::size_t n);
    static SparseMatrix from_dense(const std::vector<std::vector<Scalar>>& rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const std::map<std::pair<std::size_t, std::size_t>, Scalar>& entries() const { return e_; }

    Scalar get(std::size_t r, std::size_t c) const;
    void set(std::size_t r, std::size_t c, const Scalar& v);
    void add(std::size_t r, std::size_t c, const Scalar& v);

    SparseMatrix transpose() const;
    DenseVec apply(const DenseVec& v) const;
    SparseVec apply(const SparseVec& v) const;
    std::vector<SparseVec> row_vectors() const;
    bool is_zero() const { return e_.empty(); }

    friend SparseMatrix operator*(const SparseMatrix& a, const SparseMatrix& b);
    friend SparseMatrix operator+(const SparseMatrix& a, const SparseMatrix& b);
    friend SparseMatrix operator-(const SparseMatrix& a, const SparseMatrix& b);
    SparseMatrix scaled(const Scalar& s) const;
    bool operator==(const SparseMatrix& o) const;
    bool operator!=(const SparseMatrix& o) const { return !(*this == o); }

   private:
    std::size_t rows_ = 0, cols_ = 0;
    std::map<std::pair<std::size_t, std::size_t>, Scalar> e_;
    void check(std::size_t r, std::size_t c) const;
};

/// Incremental row echelon form. Each stored row has a leading 1 at its
/// pivot, and no other stored row has a nonzero in that column.
class Echelon {
   public:
    /// Reduce v against the stored rows; returns the remainder.
    SparseVec reduce(SparseVec v) const;
    /// Reduce and record the coefficients used, so that
    /// v = remainder + sum coeffs[k] * rows()[k] (in insertion order).
    SparseVec reduce_tracked(SparseVec v, SparseVec& coeffs) const;
    bool in_span(const SparseVec& v) const { return reduce(v).empty(); }
    /// Insert v if independent; returns true when it was.
    bool insert(const SparseVec& v);
    std::size_t rank() const { return by_pivot_.size(); }
    const std::map<std::size_t, SparseVec>& rows_by_pivot() const { return by_pivot_; }

   private:
    std::map<std::size_t, SparseVec> by_pivot_;
    // Rows in original insertion coordinates: stored row k expressed in the
    // inputs, used only by reduce_tracked.
    std::map<std::size_t, SparseVec> combo_;
    std::size_t inserted_ = 0;
};

struct RankKernelImage {
    std::size_t rank = 0;
    std::vector<DenseVec> kernel;  // length cols
    std::vector<DenseVec> image;   // length rows
};

RankKernelImage rank_kernel_image(const SparseMatrix& m);
std::size_t rank(const SparseMatrix& m);

/// Reduced row echelon form of the rows of m (leftmost pivots).
std::vector<SparseVec> rref_rows(const SparseMatrix& m, std::vector<std::size_t>* pivots = nullptr);

/// Solve m x = b. The particular solution sets free variables to zero
/// (leftmost-pivot choice). nullopt when inconsistent.
std::optional<DenseVec> solve(const SparseMatrix& m, const DenseVec& b);

/// Inverse of a square matrix; nullopt if singular.
std::optional<SparseMatrix> inverse(const SparseMatrix& m);

}  // namespace twocy
