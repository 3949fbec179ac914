#pragma once

#include "markov_ml/vector.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace markov_ml {

using Index = std::int32_t;
using Offset = std::int64_t;

struct Triplet {
    Index row;
    Index col;
    double value;
};

/// Compressed sparse row matrix.
///
/// Invariants (checked on construction):
///  - row_offsets has rows()+1 nondecreasing entries starting at 0 and ending
///    at nnz();
///  - column indices of each row lie in [0, cols()) and strictly increase;
///  - no stored entry is exactly zero.
class SparseMatrix {
public:
    SparseMatrix() : row_offsets_(1, 0) {}

    /// Takes ownership of CSR arrays. Exact zeros are pruned; every other
    /// invariant violation throws InputError.
    SparseMatrix(Index rows, Index cols, std::vector<Offset> row_offsets,
                 std::vector<Index> col_indices, std::vector<double> values);

    /// Duplicate coordinates are summed; resulting zeros are dropped.
    static SparseMatrix from_triplets(Index rows, Index cols, std::vector<Triplet> triplets);
    static SparseMatrix identity(Index n);

    Index rows() const noexcept { return rows_; }
    Index cols() const noexcept { return cols_; }
    Offset nnz() const noexcept { return static_cast<Offset>(values_.size()); }

    std::span<const Offset> row_offsets() const noexcept { return row_offsets_; }
    std::span<const Index> col_indices() const noexcept { return col_indices_; }
    std::span<const double> values() const noexcept { return values_; }

    /// Entry (i, j), zero if not stored. O(log row length).
    double at(Index i, Index j) const;

    Vector diagonal() const;
    Vector column_sums() const;
    SparseMatrix transpose() const;

    /// True if (i,j) stored <=> (j,i) stored.
    bool pattern_symmetric() const;

    std::vector<Triplet> to_triplets() const;

    friend bool operator==(const SparseMatrix &, const SparseMatrix &) = default;

private:
    Index rows_ = 0;
    Index cols_ = 0;
    std::vector<Offset> row_offsets_;
    std::vector<Index> col_indices_;
    std::vector<double> values_;
};

/// y = m x, accumulated row by row in stored column order.
void spmv(const SparseMatrix &m, std::span<const double> x, std::span<double> y);
Vector spmv(const SparseMatrix &m, std::span<const double> x);

/// Sparse product a * b (Gustavson, dense accumulator).
SparseMatrix multiply(const SparseMatrix &a, const SparseMatrix &b);

/// alpha * m + shift * I for square m.
SparseMatrix scale_and_shift(const SparseMatrix &m, double alpha, double shift);

/// Column scaling m * diag(d).
SparseMatrix scale_columns(const SparseMatrix &m, std::span<const double> d);

/// Every entry >= -tol and every column sum within tol of 1.
bool validate_column_stochastic(const SparseMatrix &m, double tol);

/// ||1^T m - 1^T||_inf
double column_sum_defect(const SparseMatrix &m);

/// Strong connectivity of the directed graph of the off-diagonal pattern.
bool is_strongly_connected(const SparseMatrix &m);

} // namespace markov_ml
