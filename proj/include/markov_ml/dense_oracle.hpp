#pragma once

#include "markov_ml/sparse_matrix.hpp"

#include <complex>
#include <cstddef>
#include <vector>

namespace markov_ml {

using Complex = std::complex<double>;

/// Full spectrum of a small matrix, computed densely.
struct SpectrumReport {
    /// Sorted by descending modulus, ties broken by descending real part.
    std::vector<Complex> eigenvalues;
    /// Right eigenvectors, eigenvectors[i] belongs to eigenvalues[i],
    /// scaled to unit l1 norm.
    std::vector<std::vector<Complex>> eigenvectors;
    /// Real part of eigenvalues[1] (eigenvalues[0] if n == 1).
    double second_eigenvalue = 0.0;
    /// second_eigenvalue - |eigenvalues[2]|; zero when n < 3.
    double spectral_gap_after_second = 0.0;

    /// Real part of eigenvectors[i]. Intended for eigenpairs known to be real.
    Vector real_eigenvector(std::size_t i) const;
};

inline constexpr Index kDenseOracleMaxN = 2000;

/// Dense nonsymmetric eigen-decomposition of m. Refuses matrices larger
/// than max_n; throws OracleError if a returned pair has relative l1
/// residual above 1e-8.
SpectrumReport dense_eigen_oracle(const SparseMatrix &m, Index max_n = kDenseOracleMaxN);

} // namespace markov_ml
