#pragma once

#include <vector>

#include "twocy/sparse.hpp"
#include "twocy/quiver.hpp"

namespace twocy::detail {

std::vector<std::size_t> offsets(const DimensionVector& d);
SparseMatrix in_field(const SparseMatrix& m, const FieldCtx& f);
SparseMatrix identity_in(std::size_t n, const FieldCtx& f);
SparseMatrix columns(const std::vector<DenseVec>& cols, std::size_t rows);
DenseVec column(const SparseMatrix& m, std::size_t c);
/// x with basis * x == y; basis has independent columns.
DenseVec coordinates(const SparseMatrix& basis, const DenseVec& y);
SparseMatrix block_diag_embed(const SparseMatrix& a, std::size_t n, std::size_t row0, std::size_t col0);

}  // namespace twocy::detail
