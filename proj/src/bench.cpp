#include "markov_ml/bench.hpp"

#include "markov_ml/error.hpp"

#include <chrono>

namespace markov_ml {

const std::vector<TablePreset> &table_presets() {
    static const std::vector<TablePreset> presets = [] {
        auto make = [](std::string id, std::string problem, std::vector<Index> sizes) {
            TablePreset t;
            t.id = std::move(id);
            t.problem = std::move(problem);
            t.sizes = std::move(sizes);
            return t;
        };
        const std::vector<Index> chain_sizes{1024, 4096, 16384, 32768, 65536, 262144};
        const std::vector<Index> well_sizes{512, 1024, 2048, 4096};
        std::vector<TablePreset> all;
        all.push_back(make("table-uniform-chain", "uniform-chain", chain_sizes));
        all.push_back(make("table-weak-link", "weak-link", chain_sizes));

        TablePreset t = make("table-lattice", "lattice2d", {1024, 4096, 16384, 32768, 65536});
        t.agg_size = 4;
        all.push_back(t);

        t = make("table-delaunay", "delaunay", {1024, 4096, 16384, 32768});
        t.agg_size = 4;
        t.theta = 0.25;
        t.theta_large = 0.1;
        t.large_n = 262144;
        t.steps_dssm = 300;
        all.push_back(t);

        t = make("table-two-well", "double-well", well_sizes);
        t.steps_dssm = t.steps_dam = 3;
        t.stretch = {StretchPolicy::MeanDiag, 0.0};
        all.push_back(t);

        t = make("table-four-well", "four-well", well_sizes);
        t.agg_size = 3;
        t.steps_dssm = t.steps_dam = 9;
        t.stretch = {StretchPolicy::MeanDiag, 0.0};
        all.push_back(t);

        t = make("table-complex-chain", "complex-chain", {1024, 4096, 16384, 32768});
        t.agg_size = 3;
        t.stretch = {StretchPolicy::Fixed, 0.49};
        all.push_back(t);
        return all;
    }();
    return presets;
}

const TablePreset &table_preset(std::string_view id) {
    for (const auto &t : table_presets())
        if (t.id == id)
            return t;
    throw InputError("metrics_bench: unknown table " + std::string(id));
}

ProblemSpec preset_problem(const TablePreset &t, Index n) {
    auto spec = problem_from_name(t.problem);
    if (!spec)
        throw InputError("metrics_bench: preset names unknown problem " + t.problem);
    spec->n = n;
    if (spec->kind == ProblemKind::Lattice2D) {
        const auto [r, c] = lattice_shape_for(n);
        spec->rows = r;
        spec->cols = c;
    }
    return *spec;
}

CycleConfig preset_config(const TablePreset &t, Method method, Index n) {
    if (method != Method::DSSM && method != Method::DAM)
        throw InputError("metrics_bench: table presets cover DS&SM and DAM");
    CycleConfig cfg;
    cfg.method = method;
    cfg.agg_cfg.target_size = t.agg_size;
    cfg.agg_cfg.theta = (t.theta_large > 0.0 && n >= t.large_n) ? t.theta_large : t.theta;
    const std::size_t steps = method == Method::DSSM ? t.steps_dssm : t.steps_dam;
    cfg.pre_steps = steps;
    cfg.post_steps = steps;
    cfg.stretch = t.stretch;
    cfg.max_cycles = t.max_cycles;
    return cfg;
}

RunReport run_experiment(const SparseMatrix &b, const ProblemSpec &problem, const CycleConfig &cfg) {
    const auto t0 = std::chrono::steady_clock::now();
    const SolveResult res = solve(b, cfg);
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    const std::size_t budget = cfg.method == Method::AM || cfg.method == Method::SSM ? cfg.first_max_cycles
                               : cfg.method == Method::RelaxOnly                     ? res.cycles_used
                                                                                     : cfg.max_cycles;
    ProblemSpec p = problem;
    p.n = b.rows();
    return make_report(p, cfg.method, res, budget, ms, cfg.residual_tol);
}

RunReport run_experiment(const ProblemSpec &problem, const CycleConfig &cfg) {
    return run_experiment(generate(problem), problem, cfg);
}

} // namespace markov_ml
