#include "markov_ml/smoothers.hpp"

#include "markov_ml/error.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace markov_ml {

DeflatedOperator::DeflatedOperator(const SparseMatrix &base, Vector first_vec, Vector deflation_vec,
                                   double shift)
    : base_(&base), first_vec_(std::move(first_vec)), deflation_vec_(std::move(deflation_vec)),
      shift_(shift) {
    const auto n = static_cast<std::size_t>(base.rows());
    if (base.rows() != base.cols())
        throw InputError("smoothers: deflated operator needs a square base matrix");
    if (first_vec_.size() != n || deflation_vec_.size() != n)
        throw InputError("smoothers: deflation vectors do not match the matrix dimension");
    const double ip = dot(first_vec_, deflation_vec_);
    if (std::abs(ip - 1.0) > 1e-10)
        throw InputError("smoothers: deflation requires (v1, u) = 1, got " + std::to_string(ip));
}

DeflatedOperator DeflatedOperator::hotelling(const SparseMatrix &base, Vector first_vec) {
    const double s = sum(first_vec);
    if (s == 0.0 || !std::isfinite(s))
        throw InputError("smoothers: Hotelling deflation needs 1^T v1 != 0");
    Vector u(first_vec.size(), 1.0 / s);
    return DeflatedOperator(base, std::move(first_vec), std::move(u), 1.0);
}

void DeflatedOperator::set_square_stretch(double d, double p) {
    if (!(d >= 0.0 && d < 1.0))
        throw InputError("smoothers: stretch d must lie in [0, 1)");
    if (!(p >= 0.0))
        throw InputError("smoothers: shift p must be nonnegative");
    mapped_ = true;
    map_d_ = d;
    map_p_ = p;
}

void DeflatedOperator::apply_base(std::span<const double> x, std::span<double> y) const {
    spmv(*base_, x, y);
    const double c = shift_ * dot(deflation_vec_, x);
    axpy(-c, first_vec_, y);
}

void DeflatedOperator::apply(std::span<const double> x, std::span<double> y) const {
    if (!mapped_) {
        apply_base(x, y);
        return;
    }
    Vector t(x.size());
    apply_base(x, t);
    axpy(map_p_, x, t);
    apply_base(t, y);
    axpy(map_p_, t, y);
    const double s = 1.0 / ((1.0 + map_p_) * (1.0 + map_p_) * (1.0 - map_d_));
    for (std::size_t i = 0; i < y.size(); ++i)
        y[i] = s * y[i] - map_d_ / (1.0 - map_d_) * x[i];
}

void SmootherConfig::validate() const {
    if (!(omega > 0.0 && omega <= 1.0))
        throw InputError("smoothers: omega must lie in (0, 1]");
    if (cheb_roots.size() > 3)
        throw InputError("smoothers: at most 3 Chebyshev roots are supported");
    for (double r : cheb_roots)
        if (!(r >= -1.0 && r <= 0.0))
            throw InputError("smoothers: Chebyshev roots must lie in [-1, 0]");
    if (kind == SmootherKind::Chebyshev && cheb_roots.empty())
        throw InputError("smoothers: Chebyshev smoother needs at least one root");
}

Vector apply_deflated(const DeflatedOperator &op, std::span<const double> x) {
    if (x.size() != static_cast<std::size_t>(op.size()))
        throw InputError("smoothers: dimension mismatch in deflated apply");
    Vector y(x.size());
    op.apply(x, y);
    return y;
}

Vector apply_polynomial(const DeflatedOperator &op, std::span<const double> x,
                        std::span<const double> roots) {
    if (roots.empty())
        throw InputError("smoothers: empty root list gives the identity polynomial");
    Vector cur(x.begin(), x.end());
    Vector next(x.size());
    for (double r : roots) {
        op.apply(cur, next);
        if (r != 0.0)
            axpy(-r, cur, next);
        std::swap(cur, next);
    }
    return cur;
}

namespace {

Vector finish(Vector y) {
    if (!all_finite(y))
        throw BreakdownError("smoothers: non-finite iterate");
    normalize_l1(y);
    return y;
}

} // namespace

Vector power_step(const SparseMatrix &b, std::span<const double> x) { return finish(spmv(b, x)); }

Vector jacobi_step(const SparseMatrix &a, std::span<const double> x, double omega) {
    const Vector d = a.diagonal();
    const Vector ax = spmv(a, x);
    Vector y(x.begin(), x.end());
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (d[i] == 0.0)
            throw SingularDiagonalError("smoothers: zero diagonal entry in Jacobi at row " +
                                        std::to_string(i));
        y[i] -= omega * ax[i] / d[i];
    }
    return finish(std::move(y));
}

Vector deflated_power_step(const DeflatedOperator &op, std::span<const double> x) {
    return finish(apply_deflated(op, x));
}

Vector deflated_jacobi_step(const DeflatedOperator &op, std::span<const double> x, double omega,
                            double lambda) {
    // D1 = diag(lambda I - B + mu v1 u^T)
    const Vector bd = op.base().diagonal();
    const auto &v = op.first_vec();
    const auto &u = op.deflation_vec();
    const Vector b1x = apply_deflated(op, x);
    Vector y(x.begin(), x.end());
    for (std::size_t i = 0; i < y.size(); ++i) {
        const double d1 = lambda - bd[i] + op.shift() * v[i] * u[i];
        if (d1 == 0.0)
            throw SingularDiagonalError("smoothers: singular diagonal of lambda I - B1 at row " +
                                        std::to_string(i));
        y[i] -= omega * (lambda * x[i] - b1x[i]) / d1;
    }
    return finish(std::move(y));
}

Vector chebyshev_step(const DeflatedOperator &op, std::span<const double> x,
                      std::span<const double> roots) {
    return finish(apply_polynomial(op, x, roots));
}

double eigenvalue_estimate(const SparseMatrix &b, std::span<const double> x) {
    const Vector bx = spmv(b, x);
    return least_squares_scale(bx, x);
}

double eigenvalue_estimate(const DeflatedOperator &op, std::span<const double> x) {
    const Vector bx = apply_deflated(op, x);
    return least_squares_scale(bx, x);
}

std::size_t spmv_per_step(const SmootherConfig &cfg) {
    return cfg.kind == SmootherKind::Chebyshev ? cfg.cheb_roots.size() : 1;
}

Vector relax(const DeflatedOperator &op, Vector x, const SmootherConfig &cfg, SpmvCounter *counter) {
    if (cfg.steps == 0)
        return x;
    cfg.validate();
    SparseMatrix a;
    if (cfg.kind == SmootherKind::Jacobi)
        a = scale_and_shift(op.base(), -1.0, 1.0);
    for (std::size_t k = 0; k < cfg.steps; ++k) {
        switch (cfg.kind) {
        case SmootherKind::Power:
            x = power_step(op.base(), x);
            break;
        case SmootherKind::Jacobi:
            x = jacobi_step(a, x, cfg.omega);
            break;
        case SmootherKind::DeflatedPower:
            x = deflated_power_step(op, x);
            break;
        case SmootherKind::DeflatedJacobi: {
            double lambda;
            if (cfg.jacobi_lambda) {
                lambda = *cfg.jacobi_lambda;
            } else {
                lambda = std::clamp(eigenvalue_estimate(op, x), 1e-3, 1.0);
                if (counter)
                    ++counter->count;
            }
            x = deflated_jacobi_step(op, x, cfg.omega, lambda);
            break;
        }
        case SmootherKind::Chebyshev:
            x = chebyshev_step(op, x, cfg.cheb_roots);
            break;
        }
        if (counter)
            counter->count += spmv_per_step(cfg) * op.spmv_per_apply();
    }
    return x;
}

} // namespace markov_ml
