#pragma once

#include "markov_ml/multilevel.hpp"
#include "markov_ml/problems.hpp"
#include "markov_ml/smoothers.hpp"

#include <json.hpp>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace markov_ml {

/// Default residual reduction that defines `it`.
inline constexpr double kReductionTarget = 1e-10;

struct ConvergenceStats {
    /// Geometric mean of the last min(3, it - 1) per-cycle ratios ending at
    /// `it` (the single first ratio when it = 1; the trailing ratios of the
    /// whole trace when the target was not reached).
    double gamma = 0.0;
    /// First k with trace[k] / trace[0] <= target; empty when never reached.
    std::optional<std::size_t> it;
    /// Every per-cycle ratio above 1.
    bool diverged = false;
};

/// Needs at least two entries and a positive trace[0].
ConvergenceStats convergence_stats(std::span<const double> trace, double target = kReductionTarget);

/// "4", or ">50" when `it` is empty and max_cycles = 50.
std::string it_label(const std::optional<std::size_t> &it, std::size_t max_cycles);

/// Sum of nnz over levels divided by the finest nnz.
double operator_complexity(std::span<const Offset> level_nnz);
double operator_complexity(const std::vector<LevelSummary> &hierarchy);

/// ((1e-10)^(1/it))^(1/c_op).
double gamma_eff(std::size_t it, double c_op);

struct RunReport {
    ProblemSpec problem;
    Method method = Method::DSSM;
    Index n = 0;
    double gamma = 0.0;
    std::optional<std::size_t> it;
    std::size_t max_cycles = 0;
    double c_op = 1.0;
    /// Empty when `it` is.
    std::optional<double> gamma_eff;
    std::size_t lev = 1;
    double d_used = 0.0;
    Vector residual_trace;
    double eigenvalue_estimate = 0.0;
    bool converged = false;
    double wall_ms = 0.0;
    std::uint64_t spmv_count = 0;

    bool operator==(const RunReport &) const = default;
};

RunReport make_report(const ProblemSpec &problem, Method method, const SolveResult &result,
                      std::size_t max_cycles, double wall_ms, double target = kReductionTarget);

void to_json(nlohmann::json &j, const ProblemSpec &p);
void from_json(const nlohmann::json &j, ProblemSpec &p);
void to_json(nlohmann::json &j, const RunReport &r);
void from_json(const nlohmann::json &j, RunReport &r);

inline constexpr const char *kCsvHeader = "problem,n,method,gamma_eff,gamma,it,c_op,lev,d,wall_ms,spmv";

/// One CSV line (no newline) in kCsvHeader order. wall_ms is written as 0
/// when with_timing is false so repeated runs are byte-identical.
std::string csv_row(const RunReport &r, bool with_timing = true);

struct SmoothingPoint {
    double lambda = 0.0;
    double error = 0.0;
};

/// For every real eigenpair (lambda_i, v_i) of b: start from
/// v1 + perturbation * v_i, apply `steps` power steps (kind Power) or damped
/// Jacobi steps on I - B (kind Jacobi, using omega), and record
/// ||x - v1||_1 with x scaled to unit sum. Dense oracle, n <= 2000. Sorted by
/// descending lambda.
std::vector<SmoothingPoint> smoothing_diagnostic(const SparseMatrix &b, SmootherKind kind, double omega = 0.5,
                                                 std::size_t steps = 5, double perturbation = 0.01);

void write_smoothing_csv(const std::vector<SmoothingPoint> &points, const std::string &smoother,
                         std::ostream &os, bool header = true);

} // namespace markov_ml
