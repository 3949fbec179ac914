#include "markov_ml/multilevel.hpp"

#include "markov_ml/error.hpp"

#include "dense.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <random>

namespace markov_ml {

namespace {

constexpr std::size_t kDenseCoarsestMax = 2000;
constexpr double kSignTolerance = 1e-13;

std::string lower(std::string s) {
    for (char &c : s)
        c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

} // namespace

std::string method_name(Method m) {
    switch (m) {
    case Method::AM: return "am";
    case Method::SSM: return "ssm";
    case Method::DAM: return "dam";
    case Method::DSSM: return "dssm";
    case Method::RelaxOnly: return "relax-only";
    }
    return "?";
}

Method method_from_name(const std::string &name) {
    const auto s = lower(name);
    if (s == "am") return Method::AM;
    if (s == "ssm" || s == "s&sm") return Method::SSM;
    if (s == "dam") return Method::DAM;
    if (s == "dssm" || s == "ds&sm") return Method::DSSM;
    if (s == "relax-only" || s == "relax") return Method::RelaxOnly;
    throw InputError("multilevel: unknown method '" + name + "'");
}

std::string stretch_policy_name(StretchPolicy p) {
    switch (p) {
    case StretchPolicy::Fixed: return "fixed";
    case StretchPolicy::MeanDiag: return "mean-diag";
    case StretchPolicy::MinDiagA: return "min-diag-A";
    }
    return "?";
}

StretchPolicy stretch_policy_from_name(const std::string &name) {
    const auto s = lower(name);
    if (s == "fixed") return StretchPolicy::Fixed;
    if (s == "mean-diag") return StretchPolicy::MeanDiag;
    if (s == "min-diag-a") return StretchPolicy::MinDiagA;
    throw InputError("multilevel: unknown stretch policy '" + name + "'");
}

void CycleConfig::validate() const {
    if (!(residual_tol > 0.0))
        throw InputError("multilevel: residual_tol must be positive");
    if (coarsest_size < 2)
        throw InputError("multilevel: coarsest_size must be at least 2");
    if (max_levels < 1)
        throw InputError("multilevel: max_levels must be at least 1");
    if (!(shift_safety >= 0.0))
        throw InputError("multilevel: shift_safety must be nonnegative");
    if (stretch.policy == StretchPolicy::Fixed && !(stretch.value >= 0.0 && stretch.value < 1.0))
        throw InputError("multilevel: stretch d must lie in [0, 1)");
    if (!(first_tol > 0.0))
        throw InputError("multilevel: first_tol must be positive");
    SmootherConfig s = smoother;
    s.steps = 1;
    s.validate();
    agg_cfg.validate();
}

// ---------------------------------------------------------------------------
// Coarse operators

namespace {

/// diag(prop) Q as an n x n_c sparse matrix.
SparseMatrix weighted_prolongation(const Aggregation &agg, std::span<const double> prop) {
    const Index n = agg.n_fine();
    std::vector<Offset> offsets(static_cast<std::size_t>(n) + 1);
    for (Index i = 0; i <= n; ++i)
        offsets[i] = i;
    return SparseMatrix(n, agg.n_coarse(), std::move(offsets), agg.membership(),
                        Vector(prop.begin(), prop.end()));
}

/// Clamps tiny negatives (renormalizing their columns), rejects larger ones.
SparseMatrix enforce_sign(const SparseMatrix &c, bool check_diagonal) {
    bool clamped = false;
    auto t = c.to_triplets();
    for (auto &e : t) {
        if (e.value >= 0.0 || (!check_diagonal && e.row == e.col))
            continue;
        if (e.value < -kSignTolerance)
            throw SignViolationError("multilevel: coarse operator entry (" + std::to_string(e.row) +
                                     "," + std::to_string(e.col) + ") = " +
                                     std::to_string(e.value) + " is negative");
        e.value = 0.0;
        clamped = true;
    }
    if (!clamped)
        return c;
    auto out = SparseMatrix::from_triplets(c.rows(), c.cols(), std::move(t));
    Vector cs = out.column_sums();
    for (double &v : cs)
        v = v != 0.0 ? 1.0 / v : 1.0;
    return scale_columns(out, cs);
}

} // namespace

SparseMatrix coarse_operator_am(const SparseMatrix &a, const Aggregation &agg,
                                std::span<const double> x_ref) {
    if (x_ref.size() != static_cast<std::size_t>(a.cols()) || agg.n_fine() != a.rows())
        throw InputError("multilevel: coarse operator dimension mismatch");
    for (double v : x_ref)
        if (!(v > 0.0))
            throw InputError("multilevel: AM coarse operator needs a strictly positive x_ref");
    const SparseMatrix q = aggregation_matrix(agg);
    return multiply(q.transpose(), multiply(scale_columns(a, x_ref), q));
}

SparseMatrix coarse_operator_stochastic(const SparseMatrix &b, const Aggregation &agg,
                                        std::span<const double> x_ref, bool check_diagonal) {
    if (x_ref.size() != static_cast<std::size_t>(b.cols()) || agg.n_fine() != b.rows())
        throw InputError("multilevel: coarse operator dimension mismatch");
    const Vector prop = aggregate_proportions(agg, x_ref);
    const SparseMatrix qt = aggregation_matrix(agg).transpose();
    return enforce_sign(multiply(qt, multiply(b, weighted_prolongation(agg, prop))), check_diagonal);
}

SparseMatrix coarse_operator_square_stretch(const SparseMatrix &b, const Aggregation &agg,
                                            std::span<const double> x_ref, double d, double p) {
    if (!(d >= 0.0 && d < 1.0))
        throw InputError("multilevel: stretch d must lie in [0, 1)");
    if (!(p >= 0.0))
        throw InputError("multilevel: shift p must be nonnegative");
    if (x_ref.size() != static_cast<std::size_t>(b.cols()) || agg.n_fine() != b.rows())
        throw InputError("multilevel: coarse operator dimension mismatch");
    const Vector prop = aggregate_proportions(agg, x_ref);
    const SparseMatrix shifted = scale_and_shift(b, 1.0, p);
    const SparseMatrix y = multiply(shifted, weighted_prolongation(agg, prop));
    const SparseMatrix z = multiply(shifted, y);
    const SparseMatrix c = multiply(aggregation_matrix(agg).transpose(), z);
    // Q^T diag(prop) Q = I_c, so the stretch acts on the coarse identity.
    const double s = 1.0 / ((1.0 + p) * (1.0 + p) * (1.0 - d));
    return enforce_sign(scale_and_shift(c, s, -d / (1.0 - d)), false);
}

double square_stretch_map(double lambda, double d, double p) {
    const double q = (lambda + p) / (1.0 + p);
    return (q * q - d) / (1.0 - d);
}

SquareStretchOperator::SquareStretchOperator(const SparseMatrix &b, double d, double p, bool squared)
    : b_(&b), d_(d), p_(p), squared_(squared) {
    if (!(d >= 0.0 && d < 1.0))
        throw InputError("multilevel: stretch d must lie in [0, 1)");
    if (!(p >= 0.0))
        throw InputError("multilevel: shift p must be nonnegative");
}

Vector SquareStretchOperator::apply(std::span<const double> x) const {
    Vector y;
    if (squared_) {
        Vector t = spmv(*b_, x);
        axpy(p_, x, t);
        y = spmv(*b_, t);
        axpy(p_, t, y);
        scale(1.0 / ((1.0 + p_) * (1.0 + p_)), y);
    } else {
        y = spmv(*b_, x);
    }
    axpy(-d_, x, y);
    scale(1.0 / (1.0 - d_), y);
    return y;
}

SparseMatrix SquareStretchOperator::materialize() const {
    if (!squared_)
        return scale_and_shift(*b_, 1.0 / (1.0 - d_), -d_ / (1.0 - d_));
    const SparseMatrix shifted = scale_and_shift(*b_, 1.0, p_);
    const double s = 1.0 / ((1.0 + p_) * (1.0 + p_) * (1.0 - d_));
    return scale_and_shift(multiply(shifted, shifted), s, -d_ / (1.0 - d_));
}

// ---------------------------------------------------------------------------
// Parameters

double estimate_shift_p(double eigenvalue_estimate, double safety) {
    return std::max(0.0, (1.0 - eigenvalue_estimate) * (1.0 + safety));
}

double choose_stretch_d(const SparseMatrix &b, const StretchConfig &cfg) {
    double d = 0.0;
    const Vector diag = b.diagonal();
    switch (cfg.policy) {
    case StretchPolicy::Fixed:
        d = cfg.value;
        if (!b.pattern_symmetric())
            d = std::min(d, 0.49);
        break;
    case StretchPolicy::MeanDiag:
        d = diag.empty() ? 0.0 : sum(diag) / static_cast<double>(diag.size());
        break;
    case StretchPolicy::MinDiagA: {
        double m = 1.0;
        for (double v : diag)
            m = std::min(m, 1.0 - v);
        d = m;
        break;
    }
    }
    return std::clamp(d, 0.0, 0.95);
}

// ---------------------------------------------------------------------------
// Solvers

std::pair<double, double> eigen_residual(const SparseMatrix &b, std::span<const double> x) {
    Vector v(x.begin(), x.end());
    normalize_l1(v);
    const Vector bv = spmv(b, v);
    const double lambda = least_squares_scale(bv, v);
    double r = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i)
        r += std::abs(bv[i] - lambda * v[i]);
    return {r, lambda};
}

Vector initial_iterate(Index n, InitialGuess kind, std::uint64_t seed) {
    if (n < 1)
        throw InputError("multilevel: empty problem");
    Vector x(static_cast<std::size_t>(n));
    if (kind == InitialGuess::Ramp) {
        if (n == 1)
            return Vector{1.0};
        for (Index k = 0; k < n; ++k)
            x[k] = 2.0 * k / (n - 1) - 1.0;
    } else {
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        for (auto &v : x)
            v = u(rng);
    }
    normalize_l1(x);
    return x;
}

namespace {

struct Context {
    const CycleConfig &cfg;
    SpmvCounter counter;
    std::vector<LevelSummary> summary;
    double max_defect = 0.0;
    bool v1_mode = false;
    bool map_smoothing = false;
    /// Per level, whether the level residual grew across the last cycle.
    std::vector<char> level_grew;

    LevelSummary &record(std::size_t level, const SparseMatrix &b) {
        if (summary.size() <= level)
            summary.resize(level + 1);
        if (level_grew.size() <= level)
            level_grew.resize(level + 1, 0);
        auto &s = summary[level];
        s = LevelSummary{b.rows(), b.nnz(), 0.0, 0.0, column_sum_defect(b)};
        max_defect = std::max(max_defect, s.column_sum_defect);
        return s;
    }

    void truncate(std::size_t levels) {
        summary.resize(levels);
        level_grew.resize(levels);
    }
};

bool is_coarsest(const SparseMatrix &b, std::size_t level, const CycleConfig &cfg) {
    return b.rows() <= cfg.coarsest_size || level + 1 >= cfg.max_levels;
}

/// Chebyshev-type polynomial smoothing without deflation; keeps x positive
/// when b is nonnegative and the roots are nonpositive.
Vector relax_first(const SparseMatrix &b, Vector x, const CycleConfig &cfg, Context &ctx) {
    const auto &roots = cfg.smoother.cheb_roots;
    Vector y(x.size());
    for (std::size_t s = 0; s < cfg.first_steps; ++s) {
        for (double r : roots) {
            spmv(b, x, y);
            if (r != 0.0)
                axpy(-r, x, y);
            std::swap(x, y);
        }
        ctx.counter.count += roots.size();
        normalize_l1(x);
    }
    return x;
}

/// The Perron vector is positive; entries that lost their sign are errors
/// of the iterate, so reflect them and lift zeros.
void make_positive(Vector &x) {
    double mx = 0.0;
    for (double &v : x) {
        v = std::abs(v);
        mx = std::max(mx, v);
    }
    const double floor = mx * 1e-14;
    for (double &v : x)
        if (v <= floor)
            v = floor > 0.0 ? floor : 1.0;
}

double first_residual(const SparseMatrix &b, std::span<const double> x) {
    Vector v(x.begin(), x.end());
    normalize_l1(v);
    const Vector bv = spmv(b, v);
    return distance1(bv, v);
}

Vector first_cycle(const SparseMatrix &b, Vector x, std::size_t level, Context &ctx) {
    const auto &cfg = ctx.cfg;
    auto &ls = ctx.record(level, b);
    if (is_coarsest(b, level, cfg) && static_cast<std::size_t>(b.rows()) <= kDenseCoarsestMax) {
        ctx.truncate(level + 1);
        return detail::dense_stationary_vector(b);
    }
    x = relax_first(b, std::move(x), cfg, ctx);
    make_positive(x);
    const Aggregation agg =
        aggregate_bottom_up(strength_matrix(b, x, false), cfg.agg_cfg);
    if (agg.n_coarse() == b.rows() || is_coarsest(b, level, cfg)) {
        ctx.truncate(level + 1);
        if (static_cast<std::size_t>(b.rows()) <= kDenseCoarsestMax)
            return detail::dense_stationary_vector(b);
        CycleConfig more = cfg;
        more.first_steps = 10 * std::max<std::size_t>(cfg.first_steps, 1);
        Context inner{more, {}, {}, 0.0, false, false, {}};
        x = relax_first(b, std::move(x), more, inner);
        ctx.counter.count += inner.counter.count;
        return x;
    }
    SparseMatrix bc = coarse_operator_stochastic(b, agg, x, true);
    if (cfg.method == Method::SSM) {
        double d = choose_stretch_d(bc, cfg.stretch);
        // Keep the stretched coarse operator nonnegative so positivity of the
        // iterate survives smoothing.
        for (double v : bc.diagonal())
            d = std::min(d, v);
        d = std::max(d, 0.0);
        bc = scale_and_shift(bc, 1.0 / (1.0 - d), -d / (1.0 - d));
        ls.stretch_d = d;
    }
    const Vector prop = aggregate_proportions(agg, x);
    Vector xc = first_cycle(bc, restrict_sum(agg, x), level + 1, ctx);
    x = prolong_with(agg, prop, xc);
    make_positive(x);
    normalize_l1(x);
    x = relax_first(b, std::move(x), cfg, ctx);
    make_positive(x);
    normalize_l1(x);
    return x;
}

Vector second_cycle(const SparseMatrix &b, Vector x, const Vector &w, const Vector *v1ref,
                    std::size_t level, Context &ctx) {
    const auto &cfg = ctx.cfg;
    const auto n = static_cast<std::size_t>(b.rows());
    ctx.record(level, b);
    if (is_coarsest(b, level, cfg) && n <= kDenseCoarsestMax) {
        ctx.truncate(level + 1);
        auto [e, lambda] = detail::dense_second_eigenpair(b, w);
        double alpha = least_squares_scale(x, e);
        if (alpha == 0.0 || !std::isfinite(alpha))
            alpha = 1.0;
        scale(alpha, e);
        return e;
    }

    DeflatedOperator op(b, w, Vector(n, 1.0), 1.0);
    double d = 0.0, p = 0.0;
    if (cfg.method == Method::DSSM) {
        d = choose_stretch_d(b, cfg.stretch);
        const double lambda = eigenvalue_estimate(op, x);
        ++ctx.counter.count;
        p = estimate_shift_p(std::clamp(lambda, 0.0, 1.0), cfg.shift_safety);
        // A stretched coarse level can carry a negative diagonal; lifting
        // B + pI to nonnegative keeps the square free of negative couplings.
        for (double v : b.diagonal())
            p = std::max(p, -v);
        ctx.summary[level].stretch_d = d;
        ctx.summary[level].shift_p = p;
        if (ctx.map_smoothing)
            op.set_square_stretch(d, p);
    }
    SmootherConfig pre = cfg.smoother;
    pre.steps = cfg.pre_steps;
    SmootherConfig post = cfg.smoother;
    post.steps = cfg.post_steps;

    const double r_in = cfg.detect_slow_process ? eigen_residual(b, x).first : 0.0;
    x = relax(op, std::move(x), pre, &ctx.counter);

    const Vector &ref = ctx.v1_mode ? *v1ref : x;
    const Aggregation agg = aggregate_bottom_up(strength_matrix(b, ref, !ctx.v1_mode), cfg.agg_cfg);
    if (agg.n_coarse() == static_cast<Index>(n) || is_coarsest(b, level, cfg)) {
        ctx.truncate(level + 1);
        if (n <= kDenseCoarsestMax) {
            auto [e, lambda] = detail::dense_second_eigenpair(b, w);
            double alpha = least_squares_scale(x, e);
            scale(alpha != 0.0 && std::isfinite(alpha) ? alpha : 1.0, e);
            return e;
        }
        return relax(op, std::move(x), post, &ctx.counter);
    }

    SparseMatrix bc;
    if (cfg.method == Method::DAM) {
        bc = coarse_operator_stochastic(b, agg, ref, true);
    } else {
        bc = coarse_operator_square_stretch(b, agg, ref, d, p);
    }
    const Vector prop = aggregate_proportions(agg, ref);
    const Vector wc = restrict_sum(agg, w);
    Vector v1c;
    if (ctx.v1_mode)
        v1c = restrict_sum(agg, *v1ref);
    Vector xc = second_cycle(bc, restrict_sum(agg, x), wc, ctx.v1_mode ? &v1c : nullptr, level + 1, ctx);
    x = prolong_with(agg, prop, xc);
    normalize_l1(x);
    x = relax(op, std::move(x), post, &ctx.counter);
    if (cfg.detect_slow_process)
        ctx.level_grew[level] = eigen_residual(b, x).first > r_in * (1.0 + 1e-12) ? 1 : 0;
    return x;
}

Vector starting_vector(const SparseMatrix &b, const CycleConfig &cfg) {
    Vector x = cfg.initial_vector ? *cfg.initial_vector : initial_iterate(b.rows(), cfg.initial, cfg.seed);
    if (x.size() != static_cast<std::size_t>(b.rows()))
        throw InputError("multilevel: initial vector does not match the matrix");
    normalize_l1(x);
    return x;
}

void check_input(const SparseMatrix &b) {
    if (b.rows() != b.cols() || b.rows() < 1)
        throw InputError("multilevel: matrix must be square and nonempty");
    if (!validate_column_stochastic(b, 1e-10))
        throw InputError("multilevel: matrix is not column-stochastic");
    if (!is_strongly_connected(b))
        throw InputError("multilevel: matrix is not irreducible");
}

Vector first_vector_for(const SparseMatrix &b, const CycleConfig &cfg, SpmvCounter &counter) {
    Vector v1;
    if (cfg.first_vector) {
        v1 = *cfg.first_vector;
        if (v1.size() != static_cast<std::size_t>(b.rows()))
            throw InputError("multilevel: first vector does not match the matrix");
    } else {
        CycleConfig fc = cfg;
        fc.method = Method::SSM;
        fc.initial_vector.reset();
        const SolveResult r = solve_first_eigenvector(b, fc);
        counter.count += r.spmv_count;
        v1 = r.eigenvector;
    }
    const double s = sum(v1);
    scale(1.0 / s, v1);
    return v1;
}

} // namespace

SolveResult solve_first_eigenvector(const SparseMatrix &b, const CycleConfig &cfg) {
    cfg.validate();
    if (cfg.method != Method::AM && cfg.method != Method::SSM)
        throw InputError("multilevel: first-eigenvector solve needs method AM or SSM");
    check_input(b);
    Context ctx{cfg, {}, {}, 0.0, false, cfg.square_stretch_smoothing, {}};
    SolveResult res;
    Vector x;
    if (cfg.initial_vector) {
        x = *cfg.initial_vector;
        if (x.size() != static_cast<std::size_t>(b.rows()))
            throw InputError("multilevel: initial vector does not match the matrix");
    } else {
        x = Vector(static_cast<std::size_t>(b.rows()), 1.0);
    }
    make_positive(x);
    normalize_l1(x);
    res.residual_history.push_back(first_residual(b, x));
    for (std::size_t c = 0; c < cfg.first_max_cycles && res.residual_history.back() > cfg.first_tol; ++c) {
        x = first_cycle(b, std::move(x), 0, ctx);
        res.residual_history.push_back(first_residual(b, x));
        ++res.cycles_used;
    }
    res.converged = res.residual_history.back() <= cfg.first_tol;
    if (!res.converged && res.residual_history.back() >= res.residual_history.front())
        throw Error("multilevel: first-eigenvector solve stagnated at residual " +
                    std::to_string(res.residual_history.back()));
    res.eigenvector = std::move(x);
    res.eigenvalue_estimate = 1.0;
    res.hierarchy = ctx.summary;
    res.spmv_count = ctx.counter.count;
    res.max_column_sum_defect = ctx.max_defect;
    res.d_used = ctx.summary.size() > 1 ? ctx.summary[1].stretch_d : 0.0;
    return res;
}

SolveResult solve_second_eigenvector(const SparseMatrix &b, const CycleConfig &cfg) {
    cfg.validate();
    if (cfg.method != Method::DAM && cfg.method != Method::DSSM)
        throw InputError("multilevel: second-eigenvector solve needs method DAM or DSSM");
    check_input(b);
    if (b.rows() < 2)
        throw InputError("multilevel: a second eigenvector needs n >= 2");
    Context ctx{cfg, {}, {}, 0.0, false, cfg.square_stretch_smoothing, {}};
    const Vector v1 = first_vector_for(b, cfg, ctx.counter);
    Vector x = starting_vector(b, cfg);

    SolveResult res;
    auto [r0, l0] = eigen_residual(b, x);
    res.residual_history.push_back(r0);
    res.eigenvalue_estimate = l0;
    ctx.v1_mode = cfg.first_cycle_uses_v1;
    std::size_t v1_cycles = 0;
    std::size_t growth = 0;
    res.converged = r0 == 0.0;
    while (!res.converged && res.cycles_used < cfg.max_cycles) {
        x = second_cycle(b, std::move(x), v1, &v1, 0, ctx);
        ++res.cycles_used;
        const auto [r, lambda] = eigen_residual(b, x);
        const double prev = res.residual_history.back();
        res.residual_history.push_back(r);
        res.eigenvalue_estimate = lambda;
        if (!std::isfinite(r))
            throw BreakdownError("multilevel: residual became non-finite");
        if (r <= cfg.residual_tol * r0) {
            res.converged = true;
            break;
        }
        if (ctx.v1_mode) {
            ++v1_cycles;
            if (r < cfg.switch_ratio * prev || v1_cycles >= cfg.max_v1_cycles)
                ctx.v1_mode = false;
            continue;
        }
        if (cfg.detect_slow_process) {
            growth = r > prev * (1.0 + 1e-12) ? growth + 1 : 0;
            if (growth >= cfg.slow_process_patience) {
                std::size_t level = 0;
                for (std::size_t l = 0; l < ctx.level_grew.size(); ++l)
                    if (ctx.level_grew[l])
                        level = l;
                throw SlowProcessError("multilevel: coarse corrections keep increasing the residual (level " +
                                           std::to_string(level) + ")",
                                       level);
            }
        }
    }
    normalize_l1(x);
    res.eigenvector = std::move(x);
    res.hierarchy = ctx.summary;
    res.spmv_count = ctx.counter.count;
    res.max_column_sum_defect = ctx.max_defect;
    res.d_used = ctx.summary.empty() ? 0.0 : ctx.summary[0].stretch_d;
    return res;
}

SolveResult solve_relax_only(const SparseMatrix &b, const CycleConfig &cfg, std::size_t steps) {
    cfg.validate();
    check_input(b);
    SpmvCounter counter;
    const Vector v1 = first_vector_for(b, cfg, counter);
    const DeflatedOperator op = DeflatedOperator::hotelling(b, v1);
    Vector x = starting_vector(b, cfg);
    SolveResult res;
    auto [r0, l0] = eigen_residual(b, x);
    res.residual_history.push_back(r0);
    res.eigenvalue_estimate = l0;
    SmootherConfig one = cfg.smoother;
    one.steps = 1;
    for (std::size_t k = 0; k < steps; ++k) {
        x = relax(op, std::move(x), one, &counter);
        const auto [r, lambda] = eigen_residual(b, x);
        res.residual_history.push_back(r);
        res.eigenvalue_estimate = lambda;
        ++res.cycles_used;
        if (r <= cfg.residual_tol * r0) {
            res.converged = true;
            break;
        }
    }
    res.converged = res.converged || r0 == 0.0;
    res.eigenvector = std::move(x);
    res.hierarchy.push_back({b.rows(), b.nnz(), 0.0, 0.0, column_sum_defect(b)});
    res.spmv_count = counter.count;
    res.max_column_sum_defect = res.hierarchy[0].column_sum_defect;
    return res;
}

SolveResult solve(const SparseMatrix &b, const CycleConfig &cfg) {
    switch (cfg.method) {
    case Method::AM:
    case Method::SSM:
        return solve_first_eigenvector(b, cfg);
    case Method::DAM:
    case Method::DSSM:
        return solve_second_eigenvector(b, cfg);
    case Method::RelaxOnly:
        return solve_relax_only(b, cfg, cfg.pre_steps + cfg.post_steps);
    }
    throw InputError("multilevel: unknown method");
}

} // namespace markov_ml
