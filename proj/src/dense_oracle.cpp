#include "markov_ml/dense_oracle.hpp"

#include "dense.hpp"
#include "markov_ml/error.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace markov_ml {

Vector SpectrumReport::real_eigenvector(std::size_t i) const {
    Vector v(eigenvectors.at(i).size());
    std::transform(eigenvectors[i].begin(), eigenvectors[i].end(), v.begin(),
                   [](Complex c) { return c.real(); });
    return v;
}

SpectrumReport dense_eigen_oracle(const SparseMatrix &m, Index max_n) {
    if (m.rows() != m.cols())
        throw InputError("sparse_core: dense_eigen_oracle needs a square matrix");
    if (m.rows() > max_n)
        throw OracleError("sparse_core: dense_eigen_oracle refuses n=" + std::to_string(m.rows()) +
                          " (cap " + std::to_string(max_n) + ")");
    const Index n = m.rows();
    SpectrumReport report;
    if (n == 0)
        return report;

    const Eigen::MatrixXd dense = detail::to_dense(m);
    Eigen::EigenSolver<Eigen::MatrixXd> solver(dense, /*computeEigenvectors=*/true);
    if (solver.info() != Eigen::Success)
        throw OracleError("sparse_core: dense eigen-decomposition did not converge");

    const Eigen::VectorXcd values = solver.eigenvalues();
    const Eigen::MatrixXcd vectors = solver.eigenvectors();

    std::vector<Index> order(n);
    std::iota(order.begin(), order.end(), Index{0});
    std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) {
        const double ma = std::abs(values[a]);
        const double mb = std::abs(values[b]);
        if (ma != mb)
            return ma > mb;
        return values[a].real() > values[b].real();
    });

    const Eigen::MatrixXcd cdense = dense.cast<Complex>();
    report.eigenvalues.reserve(n);
    report.eigenvectors.reserve(n);
    for (Index idx : order) {
        Eigen::VectorXcd v = vectors.col(idx);
        const double l1 = v.cwiseAbs().sum();
        if (!(l1 > 0.0))
            throw OracleError("sparse_core: dense oracle returned a zero eigenvector");
        v /= l1;
        const Eigen::VectorXcd r = cdense * v - values[idx] * v;
        if (r.cwiseAbs().sum() > 1e-8)
            throw OracleError("sparse_core: dense oracle eigenpair residual " +
                              std::to_string(r.cwiseAbs().sum()) + " exceeds 1e-8");
        report.eigenvalues.push_back(values[idx]);
        report.eigenvectors.emplace_back(v.data(), v.data() + n);
    }
    report.second_eigenvalue = report.eigenvalues[n > 1 ? 1 : 0].real();
    if (n >= 3)
        report.spectral_gap_after_second =
            report.second_eigenvalue - std::abs(report.eigenvalues[2]);
    return report;
}

namespace detail {

Vector dense_stationary_vector(const SparseMatrix &b) {
    const Index n = b.rows();
    Eigen::MatrixXd a = Eigen::MatrixXd::Identity(n, n) - to_dense(b);
    a.row(n - 1).setOnes();
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);
    rhs[n - 1] = 1.0;
    const Eigen::VectorXd x = a.fullPivLu().solve(rhs);
    Vector out(x.data(), x.data() + n);
    normalize_l1(out);
    return out;
}

std::pair<Vector, double> dense_second_eigenpair(const SparseMatrix &b,
                                                 std::span<const double> deflation_vec) {
    const Index n = b.rows();
    if (deflation_vec.size() != static_cast<std::size_t>(n))
        throw InputError("multilevel: deflation vector size mismatch");
    Eigen::MatrixXd d = to_dense(b);
    for (Index j = 0; j < n; ++j)
        for (Index i = 0; i < n; ++i)
            d(i, j) -= deflation_vec[i];

    Eigen::EigenSolver<Eigen::MatrixXd> solver(d, true);
    if (solver.info() != Eigen::Success)
        throw OracleError("multilevel: coarsest-level eigen-decomposition did not converge");
    const Eigen::VectorXcd values = solver.eigenvalues();

    Index best = -1;
    for (Index i = 0; i < n; ++i) {
        const Complex l = values[i];
        if (std::abs(l.imag()) > 1e-10 * std::max(1.0, std::abs(l)))
            continue;
        if (best < 0 || l.real() > values[best].real())
            best = i;
    }
    if (best < 0)
        throw OracleError("multilevel: coarsest level has no real eigenvalue");

    const Eigen::VectorXcd v = solver.eigenvectors().col(best);
    Vector out(n);
    for (Index i = 0; i < n; ++i)
        out[i] = v[i].real();
    normalize_l1(out);
    return {std::move(out), values[best].real()};
}

} // namespace detail

} // namespace markov_ml
