#pragma once

#include "markov_ml/sparse_matrix.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace markov_ml {

enum class ProblemKind { UniformChain, WeakLinkChain, Lattice2D, DelaunayWalk, MultiWell, ComplexChain };

/// Parameters of a generated test chain. Unused fields are ignored by the
/// generator of a given kind.
struct ProblemSpec {
    ProblemKind kind = ProblemKind::UniformChain;
    Index n = 0;
    double epsilon = 0.001;  // weak-link weight
    Index rows = 0;          // lattice shape
    Index cols = 0;
    int wells = 2;
    std::int64_t mc_samples = 10000;  // Langevin steps per start box
    std::uint64_t seed = 1;
    // Multi-well potential (barrier/2) cos(2 pi wells x), overdamped Langevin
    // x' = x - tau V'(x) + sqrt(2 tau / beta) xi with reflecting walls.
    double barrier = 4.0;
    double beta = 1.0;
    double time_step = 8e-4;

    bool operator==(const ProblemSpec &) const = default;
};

/// CLI names: uniform-chain, weak-link, lattice2d, delaunay, double-well,
/// four-well, complex-chain. double-well/four-well set `wells`.
std::optional<ProblemSpec> problem_from_name(std::string_view name);
std::string problem_name(const ProblemSpec &spec);

/// Lazy walk 1/2 I + 1/2 W on the path graph, W column-normalized adjacency.
SparseMatrix gen_uniform_chain(Index n);

/// Plain (non-lazy) random walk W on the path graph; spectrum in [-1,1].
SparseMatrix gen_path_walk(Index n);

/// Uniform chain whose middle edge (n/2-1, n/2) has weight epsilon.
SparseMatrix gen_weak_link_chain(Index n, double epsilon);

/// Lazy walk on the rows x cols grid graph with 4-neighbour edges.
SparseMatrix gen_lattice_2d(Index rows, Index cols);

/// Lazy walk on the Delaunay triangulation of n seeded uniform points in the
/// unit square. Vertices are numbered by increasing x coordinate.
SparseMatrix gen_delaunay_walk(Index n, std::uint64_t seed);

/// Monte Carlo box-to-box transition matrix of a 1D multi-well potential.
SparseMatrix gen_multiwell(const ProblemSpec &spec);
SparseMatrix gen_multiwell(Index n, int wells, std::int64_t mc_samples, std::uint64_t seed);

/// Directed chain with edges i->i+1, i->i-1 and skip edges i->(i+2) mod n,
/// column-normalized, no self loops.
SparseMatrix gen_complex_chain(Index n);

/// Dispatches on spec.kind. For Lattice2D with rows/cols unset, the shape is
/// derived from n (square when possible, else 2^k x 2^(k+1)).
SparseMatrix generate(const ProblemSpec &spec);

/// Lattice shape used for a Lattice2D problem of size n.
std::pair<Index, Index> lattice_shape_for(Index n);

// Delaunay triangulation (Bowyer-Watson with a super-triangle).
struct Point2 {
    double x;
    double y;
};
using Triangle = std::array<Index, 3>;
std::vector<Triangle> delaunay_triangulation(const std::vector<Point2> &points);

/// The points gen_delaunay_walk triangulates, already sorted by x.
std::vector<Point2> delaunay_points(Index n, std::uint64_t seed);

} // namespace markov_ml
