#pragma once

#include "markov_ml/metrics.hpp"
#include "markov_ml/multilevel.hpp"
#include "markov_ml/problems.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace markov_ml {

/// Parameters of one second-eigenvector table: the problem family, the sizes
/// of its rows and the solver settings shared by the DS&SM and DAM columns.
struct TablePreset {
    std::string id;
    std::string problem;
    std::vector<Index> sizes;
    Index agg_size = 2;
    double theta = 0.1;
    /// theta for rows at or above large_n (0 disables).
    double theta_large = 0.0;
    Index large_n = 0;
    std::size_t steps_dssm = 100;
    std::size_t steps_dam = 100;
    StretchConfig stretch;
    std::size_t max_cycles = 50;
};

/// table-uniform-chain, table-weak-link, table-lattice, table-delaunay,
/// table-two-well, table-four-well, table-complex-chain.
const std::vector<TablePreset> &table_presets();
/// Throws InputError for an unknown id.
const TablePreset &table_preset(std::string_view id);

ProblemSpec preset_problem(const TablePreset &t, Index n);
/// Method must be DSSM or DAM.
CycleConfig preset_config(const TablePreset &t, Method method, Index n);

/// Generates the matrix, solves, and times the solve (generation excluded).
RunReport run_experiment(const ProblemSpec &problem, const CycleConfig &cfg);
RunReport run_experiment(const SparseMatrix &b, const ProblemSpec &problem, const CycleConfig &cfg);

} // namespace markov_ml
