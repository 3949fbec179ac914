#pragma once

// Internal dense helpers shared by the oracle and the coarsest-level solves.

#include "markov_ml/sparse_matrix.hpp"

#include <Eigen/Dense>

namespace markov_ml::detail {

inline Eigen::MatrixXd to_dense(const SparseMatrix &m) {
    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(m.rows(), m.cols());
    const auto off = m.row_offsets();
    const auto col = m.col_indices();
    const auto val = m.values();
    for (Index i = 0; i < m.rows(); ++i)
        for (Offset k = off[i]; k < off[i + 1]; ++k)
            d(i, col[k]) = val[k];
    return d;
}

/// Positive kernel vector of I - b (b column-stochastic, irreducible),
/// l1-normalized.
Vector dense_stationary_vector(const SparseMatrix &b);

/// Second eigenpair of a column-stochastic b: the eigenvector of the largest
/// real eigenvalue of b - w 1^T, whose spectrum is that of b with the unit
/// eigenvalue replaced by 0 whenever 1^T w = 1.
std::pair<Vector, double> dense_second_eigenpair(const SparseMatrix &b,
                                                 std::span<const double> deflation_vec);

} // namespace markov_ml::detail
