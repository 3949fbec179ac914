#pragma once

// Test-only reference computations. Everything here goes through dense
// Eigen matrices or brute-force loops so it stays independent of the CSR
// kernels under test.

#include "markov_ml/sparse_matrix.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

namespace markov_ml::testing {

inline Eigen::MatrixXd dense(const SparseMatrix &m) {
    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(m.rows(), m.cols());
    for (const auto &t : m.to_triplets())
        d(t.row, t.col) = t.value;
    return d;
}

inline SparseMatrix sparse(const Eigen::MatrixXd &d) {
    std::vector<Triplet> t;
    for (Eigen::Index j = 0; j < d.cols(); ++j)
        for (Eigen::Index i = 0; i < d.rows(); ++i)
            if (d(i, j) != 0.0)
                t.push_back({static_cast<Index>(i), static_cast<Index>(j), d(i, j)});
    return SparseMatrix::from_triplets(static_cast<Index>(d.rows()), static_cast<Index>(d.cols()),
                                       std::move(t));
}

inline Eigen::VectorXd ev(const Vector &v) {
    return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

inline Vector sv(const Eigen::VectorXd &v) { return Vector(v.data(), v.data() + v.size()); }

/// Triple-loop y = M x.
inline Vector dense_matvec(const SparseMatrix &m, const Vector &x) {
    std::vector<std::vector<double>> a(m.rows(), std::vector<double>(m.cols(), 0.0));
    for (const auto &t : m.to_triplets())
        a[t.row][t.col] = t.value;
    Vector y(m.rows(), 0.0);
    for (Index i = 0; i < m.rows(); ++i)
        for (Index j = 0; j < m.cols(); ++j)
            y[i] += a[i][j] * x[j];
    return y;
}

/// Random irreducible column-stochastic matrix: a cycle plus random extra
/// edges, positive random weights, random self loops.
inline SparseMatrix random_stochastic(Index n, std::uint64_t seed, double extra_density = 0.1) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.1, 1.0);
    std::bernoulli_distribution coin(extra_density);
    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
    for (Index j = 0; j < n; ++j) {
        d((j + 1) % n, j) = u(rng);
        d(j, j) = u(rng);
        for (Index i = 0; i < n; ++i)
            if (coin(rng))
                d(i, j) += u(rng);
    }
    for (Index j = 0; j < n; ++j)
        d.col(j) /= d.col(j).sum();
    return sparse(d);
}

/// Random reversible chain: lazy walk on a random weighted connected graph.
inline SparseMatrix random_reversible(Index n, std::uint64_t seed, double density = 0.15) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.1, 1.0);
    std::bernoulli_distribution coin(density);
    Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
    for (Index i = 0; i + 1 < n; ++i)
        w(i, i + 1) = w(i + 1, i) = u(rng);
    for (Index i = 0; i < n; ++i)
        for (Index j = i + 2; j < n; ++j)
            if (coin(rng))
                w(i, j) = w(j, i) = u(rng);
    Eigen::MatrixXd b = 0.5 * Eigen::MatrixXd::Identity(n, n);
    for (Index j = 0; j < n; ++j)
        b.col(j) += 0.5 * w.col(j) / w.col(j).sum();
    return sparse(b);
}

/// Eigenvalues sorted descending by real part (for real spectra).
inline std::vector<double> sorted_real_eigenvalues(const Eigen::MatrixXd &m) {
    Eigen::EigenSolver<Eigen::MatrixXd> es(m, false);
    std::vector<double> out;
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        out.push_back(es.eigenvalues()[i].real());
    std::sort(out.rbegin(), out.rend());
    return out;
}

/// Real parts of the dense eigenpairs, sorted by descending eigenvalue. Only
/// meaningful for matrices with a real spectrum.
struct RealEig {
    std::vector<double> values;
    std::vector<Eigen::VectorXd> vectors;
};

inline RealEig real_eig(const SparseMatrix &b) {
    Eigen::EigenSolver<Eigen::MatrixXd> es(dense(b));
    std::vector<std::pair<double, Eigen::VectorXd>> p;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
        p.emplace_back(es.eigenvalues()[i].real(), es.eigenvectors().col(i).real());
    std::sort(p.begin(), p.end(), [](const auto &a, const auto &c) { return a.first > c.first; });
    RealEig r;
    for (auto &[l, v] : p) {
        Eigen::VectorXd w = v / v.lpNorm<1>();
        // deterministic sign: positive sum for v1, positive first entry otherwise
        if ((r.values.empty() && w.sum() < 0) || (!r.values.empty() && w(0) < 0))
            w = -w;
        r.values.push_back(l);
        r.vectors.push_back(w);
    }
    return r;
}

inline Eigen::VectorXd stationary(const SparseMatrix &b) {
    Eigen::VectorXd v = real_eig(b).vectors[0];
    return v / v.sum();
}

/// Stationary vector of a birth-death (tridiagonal) chain from detailed
/// balance, pi_{i+1} / pi_i = B(i+1, i) / B(i, i+1), unit sum.
inline Eigen::VectorXd birth_death_stationary(const SparseMatrix &b) {
    const Eigen::MatrixXd d = dense(b);
    const Eigen::Index n = d.rows();
    Eigen::VectorXd pi(n);
    pi(0) = 1.0;
    for (Eigen::Index i = 0; i + 1 < n; ++i)
        pi(i + 1) = pi(i) * d(i + 1, i) / d(i, i + 1);
    return pi / pi.sum();
}

/// Eigenpairs of a reversible chain through the symmetric similarity
/// D^{-1/2} B D^{1/2}, D = diag(pi). Much more accurate than the general
/// solver when eigenvalues cluster. Sorted descending, vectors as in real_eig.
inline RealEig reversible_eig(const SparseMatrix &b, const Eigen::VectorXd &pi) {
    const Eigen::VectorXd s = pi.cwiseSqrt();
    Eigen::MatrixXd m = s.cwiseInverse().asDiagonal() * dense(b) * s.asDiagonal();
    m = 0.5 * (m + m.transpose()).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
    RealEig r;
    for (Eigen::Index i = m.rows() - 1; i >= 0; --i) {
        Eigen::VectorXd w = s.asDiagonal() * es.eigenvectors().col(i);
        w /= w.lpNorm<1>();
        if ((r.values.empty() && w.sum() < 0) || (!r.values.empty() && w(0) < 0))
            w = -w;
        r.values.push_back(es.eigenvalues()(i));
        r.vectors.push_back(w);
    }
    return r;
}

/// Distance between the directions of x and y (both scaled to unit l1 norm,
/// sign chosen to match).
inline double direction_distance(const Eigen::VectorXd &x, const Eigen::VectorXd &y) {
    const Eigen::VectorXd a = x / x.lpNorm<1>();
    Eigen::VectorXd b = y / y.lpNorm<1>();
    if (a.dot(b) < 0)
        b = -b;
    return (a - b).lpNorm<1>();
}

} // namespace markov_ml::testing
