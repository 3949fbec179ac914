#include "markov_ml/metrics.hpp"

#include "markov_ml/dense_oracle.hpp"
#include "markov_ml/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

namespace markov_ml {

ConvergenceStats convergence_stats(std::span<const double> trace, double target) {
    if (trace.size() < 2)
        throw InputError("metrics_bench: convergence_stats needs at least two trace entries");
    if (!(trace[0] > 0.0))
        throw InputError("metrics_bench: convergence_stats needs a positive initial residual");
    if (!(target > 0.0 && target < 1.0))
        throw InputError("metrics_bench: reduction target must lie in (0, 1)");
    ConvergenceStats s;
    // Slack of a few ulps so that a trace built by repeated multiplication
    // lands on the target it was built for.
    for (std::size_t k = 1; k < trace.size(); ++k)
        if (trace[k] / trace[0] <= target * (1.0 + 1e-12)) {
            s.it = k;
            break;
        }
    const std::size_t end = s.it ? *s.it : trace.size() - 1;
    const std::size_t count = std::max<std::size_t>(1, std::min<std::size_t>(3, end - 1));
    double log_sum = 0.0;
    for (std::size_t k = end + 1 - count; k <= end; ++k)
        log_sum += std::log(trace[k] / trace[k - 1]);
    s.gamma = std::exp(log_sum / static_cast<double>(count));
    s.diverged = true;
    for (std::size_t k = 1; k < trace.size(); ++k)
        if (!(trace[k] > trace[k - 1]))
            s.diverged = false;
    return s;
}

std::string it_label(const std::optional<std::size_t> &it, std::size_t max_cycles) {
    return it ? std::to_string(*it) : ">" + std::to_string(max_cycles);
}

double operator_complexity(std::span<const Offset> level_nnz) {
    if (level_nnz.empty() || level_nnz[0] <= 0)
        throw InputError("metrics_bench: operator complexity needs a nonempty finest level");
    double total = 0.0;
    for (Offset z : level_nnz)
        total += static_cast<double>(z);
    return total / static_cast<double>(level_nnz[0]);
}

double operator_complexity(const std::vector<LevelSummary> &hierarchy) {
    std::vector<Offset> nnz;
    for (const auto &l : hierarchy)
        nnz.push_back(l.nnz);
    return operator_complexity(nnz);
}

double gamma_eff(std::size_t it, double c_op) {
    if (it == 0 || !(c_op > 0.0))
        throw InputError("metrics_bench: gamma_eff needs it >= 1 and c_op > 0");
    return std::pow(kReductionTarget, 1.0 / (static_cast<double>(it) * c_op));
}

RunReport make_report(const ProblemSpec &problem, Method method, const SolveResult &result,
                      std::size_t max_cycles, double wall_ms, double target) {
    RunReport r;
    r.problem = problem;
    r.method = method;
    r.n = result.eigenvector.empty() ? problem.n : static_cast<Index>(result.eigenvector.size());
    r.max_cycles = max_cycles;
    r.residual_trace = result.residual_history;
    r.eigenvalue_estimate = result.eigenvalue_estimate;
    r.converged = result.converged;
    r.wall_ms = wall_ms;
    r.spmv_count = result.spmv_count;
    r.d_used = result.d_used;
    r.lev = std::max<std::size_t>(1, result.hierarchy.size());
    r.c_op = result.hierarchy.empty() ? 1.0 : operator_complexity(result.hierarchy);
    if (r.residual_trace.size() >= 2 && r.residual_trace[0] > 0.0) {
        const ConvergenceStats s = convergence_stats(r.residual_trace, target);
        r.gamma = s.gamma;
        r.it = s.it;
    } else if (!r.residual_trace.empty() && r.residual_trace[0] == 0.0) {
        r.it = 0;
    }
    if (r.it && *r.it > 0)
        r.gamma_eff = gamma_eff(*r.it, r.c_op);
    return r;
}

void to_json(nlohmann::json &j, const ProblemSpec &p) {
    j = nlohmann::json{{"name", problem_name(p)},       {"n", p.n},
                       {"epsilon", p.epsilon},          {"rows", p.rows},
                       {"cols", p.cols},                {"wells", p.wells},
                       {"mc_samples", p.mc_samples},    {"seed", p.seed},
                       {"barrier", p.barrier},          {"beta", p.beta},
                       {"time_step", p.time_step}};
}

void from_json(const nlohmann::json &j, ProblemSpec &p) {
    const auto kind = problem_from_name(j.at("name").get<std::string>());
    if (!kind)
        throw ParseError("metrics_bench: unknown problem " + j.at("name").get<std::string>(), 0);
    p = *kind;
    j.at("n").get_to(p.n);
    j.at("epsilon").get_to(p.epsilon);
    j.at("rows").get_to(p.rows);
    j.at("cols").get_to(p.cols);
    j.at("wells").get_to(p.wells);
    j.at("mc_samples").get_to(p.mc_samples);
    j.at("seed").get_to(p.seed);
    j.at("barrier").get_to(p.barrier);
    j.at("beta").get_to(p.beta);
    j.at("time_step").get_to(p.time_step);
}

void to_json(nlohmann::json &j, const RunReport &r) {
    j = nlohmann::json{{"problem", r.problem},
                       {"method", method_name(r.method)},
                       {"n", r.n},
                       {"gamma", r.gamma},
                       {"it", r.it ? nlohmann::json(*r.it) : nlohmann::json(nullptr)},
                       {"it_label", it_label(r.it, r.max_cycles)},
                       {"max_cycles", r.max_cycles},
                       {"c_op", r.c_op},
                       {"gamma_eff", r.gamma_eff ? nlohmann::json(*r.gamma_eff) : nlohmann::json(nullptr)},
                       {"lev", r.lev},
                       {"d_used", r.d_used},
                       {"residual_trace", r.residual_trace},
                       {"eigenvalue_estimate", r.eigenvalue_estimate},
                       {"converged", r.converged},
                       {"wall_ms", r.wall_ms},
                       {"spmv_count", r.spmv_count}};
}

void from_json(const nlohmann::json &j, RunReport &r) {
    r = RunReport{};
    j.at("problem").get_to(r.problem);
    r.method = method_from_name(j.at("method").get<std::string>());
    j.at("n").get_to(r.n);
    j.at("gamma").get_to(r.gamma);
    if (!j.at("it").is_null())
        r.it = j.at("it").get<std::size_t>();
    j.at("max_cycles").get_to(r.max_cycles);
    j.at("c_op").get_to(r.c_op);
    if (!j.at("gamma_eff").is_null())
        r.gamma_eff = j.at("gamma_eff").get<double>();
    j.at("lev").get_to(r.lev);
    j.at("d_used").get_to(r.d_used);
    j.at("residual_trace").get_to(r.residual_trace);
    j.at("eigenvalue_estimate").get_to(r.eigenvalue_estimate);
    j.at("converged").get_to(r.converged);
    j.at("wall_ms").get_to(r.wall_ms);
    j.at("spmv_count").get_to(r.spmv_count);
}

namespace {

std::string fmt(const char *f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

} // namespace

std::string csv_row(const RunReport &r, bool with_timing) {
    std::string s = problem_name(r.problem);
    s += ',' + std::to_string(r.n);
    s += ',' + method_name(r.method);
    s += ',' + (r.gamma_eff ? fmt("%.3g", *r.gamma_eff) : std::string());
    s += ',' + fmt("%.3g", r.gamma);
    s += ',' + it_label(r.it, r.max_cycles);
    s += ',' + fmt("%.2f", r.c_op);
    s += ',' + std::to_string(r.lev);
    s += ',' + fmt("%.2f", r.d_used);
    s += ',' + fmt("%.1f", with_timing ? r.wall_ms : 0.0);
    s += ',' + std::to_string(r.spmv_count);
    return s;
}

std::vector<SmoothingPoint> smoothing_diagnostic(const SparseMatrix &b, SmootherKind kind, double omega,
                                                 std::size_t steps, double perturbation) {
    if (kind != SmootherKind::Power && kind != SmootherKind::Jacobi)
        throw InputError("metrics_bench: smoothing diagnostic supports power and jacobi");
    const SpectrumReport spec = dense_eigen_oracle(b);
    Vector v1 = spec.real_eigenvector(0);
    scale(1.0 / sum(v1), v1);
    const SparseMatrix a = scale_and_shift(b, -1.0, 1.0);
    std::vector<SmoothingPoint> out;
    for (std::size_t i = 0; i < spec.eigenvalues.size(); ++i) {
        if (std::abs(spec.eigenvalues[i].imag()) > 1e-12)
            continue;
        const Vector vi = spec.real_eigenvector(i);
        Vector x = v1;
        axpy(perturbation, vi, x);
        for (std::size_t k = 0; k < steps; ++k)
            x = kind == SmootherKind::Power ? power_step(b, x) : jacobi_step(a, x, omega);
        scale(1.0 / sum(x), x);
        out.push_back({spec.eigenvalues[i].real(), distance1(x, v1)});
    }
    std::stable_sort(out.begin(), out.end(),
                     [](const SmoothingPoint &p, const SmoothingPoint &q) { return p.lambda > q.lambda; });
    return out;
}

void write_smoothing_csv(const std::vector<SmoothingPoint> &points, const std::string &smoother,
                         std::ostream &os, bool header) {
    if (header)
        os << "smoother,lambda,error\n";
    for (const auto &p : points)
        os << smoother << ',' << fmt("%.17g", p.lambda) << ',' << fmt("%.17g", p.error) << '\n';
}

} // namespace markov_ml
