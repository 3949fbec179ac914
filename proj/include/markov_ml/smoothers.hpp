#pragma once

#include "markov_ml/sparse_matrix.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace markov_ml {

/// Implicit rank-one corrected operator B - shift * first_vec * deflation_vec^T.
///
/// The base matrix is referenced, not copied; it must outlive the operator.
class DeflatedOperator {
public:
    /// Wielandt deflation with an arbitrary deflation vector u. Requires
    /// (first_vec, u) = 1 within 1e-10.
    DeflatedOperator(const SparseMatrix &base, Vector first_vec, Vector deflation_vec, double shift);

    /// Hotelling deflation: u = 1 / (1^T v) * 1 and shift 1, so that the right
    /// eigenvectors v2..vn of B are preserved.
    static DeflatedOperator hotelling(const SparseMatrix &base, Vector first_vec);

    const SparseMatrix &base() const noexcept { return *base_; }
    const Vector &first_vec() const noexcept { return first_vec_; }
    const Vector &deflation_vec() const noexcept { return deflation_vec_; }
    double shift() const noexcept { return shift_; }
    Index size() const noexcept { return base_->rows(); }

    /// Replaces B1 by ((B1 + pI)^2/(1+p)^2 - dI)/(1-d) in every apply.
    void set_square_stretch(double d, double p);
    bool mapped() const noexcept { return mapped_; }
    /// spmv per apply: 1, or 2 with the square-stretch map.
    std::size_t spmv_per_apply() const noexcept { return mapped_ ? 2 : 1; }

    /// y = B1 x (or its square-stretch image); B1 x = B x - shift * first_vec
    /// * (u^T x) costs one spmv plus one inner product.
    void apply(std::span<const double> x, std::span<double> y) const;

private:
    void apply_base(std::span<const double> x, std::span<double> y) const;


    const SparseMatrix *base_;
    Vector first_vec_;
    Vector deflation_vec_;
    double shift_;
    bool mapped_ = false;
    double map_d_ = 0.0;
    double map_p_ = 0.0;
};

enum class SmootherKind { Power, Jacobi, DeflatedPower, DeflatedJacobi, Chebyshev };

struct SmootherConfig {
    SmootherKind kind = SmootherKind::Chebyshev;
    double omega = 0.7;
    std::size_t steps = 1;
    /// Zeros of the smoothing polynomial p(t) = prod (t - r_i), in [-1, 0].
    std::vector<double> cheb_roots{-0.5, -0.25, 0.0};
    /// lambda of E = lambda I - B1 for deflated Jacobi; unset means "use the
    /// current least-squares eigenvalue estimate, clamped to (0, 1]".
    std::optional<double> jacobi_lambda;

    void validate() const;
};

/// Counts operator applications (one spmv each; the rank-one part of a
/// deflated apply is not counted separately).
struct SpmvCounter {
    std::uint64_t count = 0;
};

Vector apply_deflated(const DeflatedOperator &op, std::span<const double> x);

/// p(B1) x without normalization.
Vector apply_polynomial(const DeflatedOperator &op, std::span<const double> x,
                        std::span<const double> roots);

// Single normalized steps. Every step ends with an l1 normalization that
// makes the first nonzero entry positive.

Vector power_step(const SparseMatrix &b, std::span<const double> x);
/// Damped Jacobi on a (typically A = I - B): x - omega D^{-1} a x.
Vector jacobi_step(const SparseMatrix &a, std::span<const double> x, double omega);
Vector deflated_power_step(const DeflatedOperator &op, std::span<const double> x);
/// Damped Jacobi on E = lambda I - B1.
Vector deflated_jacobi_step(const DeflatedOperator &op, std::span<const double> x, double omega,
                            double lambda);
Vector chebyshev_step(const DeflatedOperator &op, std::span<const double> x,
                      std::span<const double> roots);

/// (x, B x) / (x, x): the scalar minimizing ||B x - lambda x||_2.
double eigenvalue_estimate(const SparseMatrix &b, std::span<const double> x);
double eigenvalue_estimate(const DeflatedOperator &op, std::span<const double> x);

/// Runs cfg.steps steps of cfg.kind. Power/Jacobi act on the undeflated base
/// (Jacobi on I - B); the deflated kinds and Chebyshev use op.
Vector relax(const DeflatedOperator &op, Vector x, const SmootherConfig &cfg,
             SpmvCounter *counter = nullptr);

/// Number of operator applications one step of cfg.kind costs.
std::size_t spmv_per_step(const SmootherConfig &cfg);

} // namespace markov_ml
