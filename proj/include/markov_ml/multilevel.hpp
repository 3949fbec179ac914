#pragma once

#include "markov_ml/aggregation.hpp"
#include "markov_ml/smoothers.hpp"
#include "markov_ml/sparse_matrix.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace markov_ml {

enum class Method { AM, SSM, DAM, DSSM, RelaxOnly };

std::string method_name(Method m);
/// Accepts am, ssm, dam, dssm, relax-only (case-insensitive).
Method method_from_name(const std::string &name);

enum class StretchPolicy { Fixed, MeanDiag, MinDiagA };

struct StretchConfig {
    StretchPolicy policy = StretchPolicy::Fixed;
    double value = 0.5;  // used by Fixed
};

std::string stretch_policy_name(StretchPolicy p);
StretchPolicy stretch_policy_from_name(const std::string &name);

enum class InitialGuess { Ramp, Random };

struct CycleConfig {
    Method method = Method::DSSM;
    std::size_t pre_steps = 100;
    std::size_t post_steps = 100;
    /// kind/omega/roots/lambda; the step count comes from pre/post_steps.
    SmootherConfig smoother;
    AggregationConfig agg_cfg;
    Index coarsest_size = 16;
    std::size_t max_levels = 40;
    std::size_t max_cycles = 50;
    /// Relative residual reduction target.
    double residual_tol = 1e-10;

    bool first_cycle_uses_v1 = true;
    /// Cycles using v1-based prolongation before switching to the iterate.
    std::size_t max_v1_cycles = 3;
    double switch_ratio = 0.5;

    StretchConfig stretch;
    double shift_safety = 0.5;
    /// DS&SM: smooth with the square-stretched deflated operator (two spmv
    /// per apply) instead of B1 itself.
    bool square_stretch_smoothing = true;

    InitialGuess initial = InitialGuess::Ramp;
    std::uint64_t seed = 1;
    /// Overrides `initial` when set.
    std::optional<Vector> initial_vector;
    /// Known first eigenvector; skips the inner first-eigenvector solve.
    std::optional<Vector> first_vector;

    bool detect_slow_process = true;
    std::size_t slow_process_patience = 4;

    // Inner first-eigenvector solve (AM/SSM).
    std::size_t first_steps = 2;
    std::size_t first_max_cycles = 1000;
    /// Absolute l1 residual ||Bx - x||_1 target for ||x||_1 = 1. The error in
    /// x is roughly this divided by 1 - lambda2, hence the small default.
    double first_tol = 1e-14;

    void validate() const;
};

struct LevelSummary {
    Index size = 0;
    Offset nnz = 0;
    double stretch_d = 0.0;
    double shift_p = 0.0;
    /// ||1^T B - 1^T||_inf of the level operator.
    double column_sum_defect = 0.0;
};

struct SolveResult {
    Vector eigenvector;
    double eigenvalue_estimate = 0.0;
    /// trace[0] is the initial residual, trace[k] the residual after cycle k.
    Vector residual_history;
    std::size_t cycles_used = 0;
    bool converged = false;
    std::vector<LevelSummary> hierarchy;
    std::uint64_t spmv_count = 0;
    /// Largest column-sum defect seen on any level of any cycle.
    double max_column_sum_defect = 0.0;
    double d_used = 0.0;
};

// Coarse operators --------------------------------------------------------

/// Q^T A diag(x_ref) Q. Requires x_ref > 0.
SparseMatrix coarse_operator_am(const SparseMatrix &a, const Aggregation &agg,
                                std::span<const double> x_ref);

/// Q^T B diag(x_ref) Q diag(Q^T x_ref)^{-1}. Negative entries below -1e-13
/// raise SignViolationError, smaller ones are clamped and the column
/// renormalized. check_diagonal=false exempts the diagonal from both.
SparseMatrix coarse_operator_stochastic(const SparseMatrix &b, const Aggregation &agg,
                                        std::span<const double> x_ref, bool check_diagonal = true);

/// Coarse level of the squared and stretched operator
/// (((B + pI)^2 / (1+p)^2) - dI) / (1-d) without forming the fine square.
SparseMatrix coarse_operator_square_stretch(const SparseMatrix &b, const Aggregation &agg,
                                            std::span<const double> x_ref, double d, double p);

/// lambda -> ((lambda + p)^2 / (1+p)^2 - d) / (1 - d)
double square_stretch_map(double lambda, double d, double p);

/// Implicit B^ = ((B + pI)^2/(1+p)^2 - dI)/(1-d), or the plain stretch
/// (B - dI)/(1-d) when squared is false.
class SquareStretchOperator {
public:
    SquareStretchOperator(const SparseMatrix &b, double d, double p, bool squared = true);

    Vector apply(std::span<const double> x) const;
    SparseMatrix materialize() const;
    double d() const noexcept { return d_; }
    double p() const noexcept { return p_; }

private:
    const SparseMatrix *b_;
    double d_;
    double p_;
    bool squared_;
};

// Parameters --------------------------------------------------------------

/// p = max(0, (1 - estimate)(1 + safety)).
double estimate_shift_p(double eigenvalue_estimate, double safety = 0.5);

/// d for a level operator under the given policy, clamped to [0, 0.95];
/// Fixed is further clamped to 0.49 when the pattern is not symmetric.
double choose_stretch_d(const SparseMatrix &b, const StretchConfig &cfg);

// Solvers -----------------------------------------------------------------

/// l1 residual ||B x - lambda x||_1 after scaling x to unit l1 norm, with
/// lambda the least-squares estimate. Returns {residual, lambda}.
std::pair<double, double> eigen_residual(const SparseMatrix &b, std::span<const double> x);

Vector initial_iterate(Index n, InitialGuess kind, std::uint64_t seed);

/// Stationary vector via AM or SSM V-cycles (cfg.method must be AM or SSM;
/// uses first_steps, first_max_cycles, first_tol).
SolveResult solve_first_eigenvector(const SparseMatrix &b, const CycleConfig &cfg);

/// Second eigenvector via DAM or DS&SM V-cycles.
SolveResult solve_second_eigenvector(const SparseMatrix &b, const CycleConfig &cfg);

/// Hotelling-deflated relaxation only, `steps` smoother steps; the residual
/// trace has one entry per step.
SolveResult solve_relax_only(const SparseMatrix &b, const CycleConfig &cfg, std::size_t steps);

/// Dispatches on cfg.method (RelaxOnly runs pre_steps + post_steps steps).
SolveResult solve(const SparseMatrix &b, const CycleConfig &cfg);

} // namespace markov_ml
