#include "markov_ml/problems.hpp"

#include "markov_ml/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <string>

namespace markov_ml {

namespace {

struct WeightedEdge {
    Index a;
    Index b;
    double w;
};

// Column-normalized undirected graph walk, optionally mixed 1/2 I + 1/2 W.
SparseMatrix walk_from_edges(Index n, const std::vector<WeightedEdge> &edges, bool lazy) {
    Vector degree(n, 0.0);
    for (const auto &e : edges) {
        degree[e.a] += e.w;
        degree[e.b] += e.w;
    }
    const double mix = lazy ? 0.5 : 1.0;
    std::vector<Triplet> t;
    t.reserve(2 * edges.size() + (lazy ? n : 0));
    for (const auto &e : edges) {
        t.push_back({e.b, e.a, mix * e.w / degree[e.a]});
        t.push_back({e.a, e.b, mix * e.w / degree[e.b]});
    }
    if (lazy)
        for (Index i = 0; i < n; ++i)
            t.push_back({i, i, 0.5});
    return SparseMatrix::from_triplets(n, n, std::move(t));
}

std::vector<WeightedEdge> path_edges(Index n) {
    std::vector<WeightedEdge> e;
    for (Index i = 0; i + 1 < n; ++i)
        e.push_back({i, i + 1, 1.0});
    return e;
}

// splitmix-seeded 64-bit engine with explicit double/normal draws so output is
// identical across standard library implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, 1).
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Standard normal via Box-Muller.
    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u1 = uniform();
        while (u1 <= 0.0)
            u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(a);
        has_spare_ = true;
        return r * std::cos(a);
    }

private:
    std::uint64_t state_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

std::vector<std::pair<Index, Index>> convex_hull_edges(const std::vector<Point2> &p) {
    // Andrew's monotone chain on points already sorted by (x, y).
    std::vector<Index> order(p.size());
    for (std::size_t i = 0; i < p.size(); ++i)
        order[i] = static_cast<Index>(i);
    std::sort(order.begin(), order.end(), [&](Index a, Index b) {
        return p[a].x != p[b].x ? p[a].x < p[b].x : p[a].y < p[b].y;
    });
    auto cross = [&](Index o, Index a, Index b) {
        return (p[a].x - p[o].x) * (p[b].y - p[o].y) - (p[a].y - p[o].y) * (p[b].x - p[o].x);
    };
    std::vector<Index> hull(2 * p.size());
    std::size_t k = 0;
    for (Index i : order) {
        while (k >= 2 && cross(hull[k - 2], hull[k - 1], i) <= 0)
            --k;
        hull[k++] = i;
    }
    for (std::size_t t = order.size() - 1, lo = k + 1; t-- > 0;) {
        const Index i = order[t];
        while (k >= lo && cross(hull[k - 2], hull[k - 1], i) <= 0)
            --k;
        hull[k++] = i;
    }
    std::vector<std::pair<Index, Index>> out;
    for (std::size_t i = 0; i + 1 < k; ++i)
        out.emplace_back(hull[i], hull[i + 1]);
    return out;
}

} // namespace

std::optional<ProblemSpec> problem_from_name(std::string_view name) {
    ProblemSpec s;
    if (name == "uniform-chain")
        s.kind = ProblemKind::UniformChain;
    else if (name == "weak-link")
        s.kind = ProblemKind::WeakLinkChain;
    else if (name == "lattice2d")
        s.kind = ProblemKind::Lattice2D;
    else if (name == "delaunay")
        s.kind = ProblemKind::DelaunayWalk;
    else if (name == "double-well") {
        s.kind = ProblemKind::MultiWell;
        s.wells = 2;
    } else if (name == "four-well") {
        s.kind = ProblemKind::MultiWell;
        s.wells = 4;
    } else if (name == "complex-chain")
        s.kind = ProblemKind::ComplexChain;
    else
        return std::nullopt;
    return s;
}

std::string problem_name(const ProblemSpec &spec) {
    switch (spec.kind) {
    case ProblemKind::UniformChain:
        return "uniform-chain";
    case ProblemKind::WeakLinkChain:
        return "weak-link";
    case ProblemKind::Lattice2D:
        return "lattice2d";
    case ProblemKind::DelaunayWalk:
        return "delaunay";
    case ProblemKind::MultiWell:
        return spec.wells == 4 ? "four-well" : "double-well";
    case ProblemKind::ComplexChain:
        return "complex-chain";
    }
    return "unknown";
}

SparseMatrix gen_uniform_chain(Index n) {
    if (n < 2)
        throw InputError("problem_gen: uniform chain needs n >= 2");
    return walk_from_edges(n, path_edges(n), true);
}

SparseMatrix gen_path_walk(Index n) {
    if (n < 2)
        throw InputError("problem_gen: path walk needs n >= 2");
    return walk_from_edges(n, path_edges(n), false);
}

SparseMatrix gen_weak_link_chain(Index n, double epsilon) {
    if (n < 4)
        throw InputError("problem_gen: weak-link chain needs n >= 4");
    if (!(epsilon > 0.0))
        throw InputError("problem_gen: weak-link epsilon must be positive");
    auto edges = path_edges(n);
    edges[n / 2 - 1].w = epsilon;  // edge (n/2-1, n/2)
    return walk_from_edges(n, edges, true);
}

SparseMatrix gen_lattice_2d(Index rows, Index cols) {
    if (rows < 2 || cols < 2)
        throw InputError("problem_gen: lattice needs rows, cols >= 2");
    std::vector<WeightedEdge> edges;
    for (Index r = 0; r < rows; ++r)
        for (Index c = 0; c < cols; ++c) {
            const Index i = r * cols + c;
            if (c + 1 < cols)
                edges.push_back({i, i + 1, 1.0});
            if (r + 1 < rows)
                edges.push_back({i, i + cols, 1.0});
        }
    return walk_from_edges(rows * cols, edges, true);
}

std::pair<Index, Index> lattice_shape_for(Index n) {
    const auto r = static_cast<Index>(std::llround(std::sqrt(static_cast<double>(n))));
    if (r * r == n)
        return {r, r};
    for (Index rows = r; rows >= 2; --rows)
        if (n % rows == 0 && n / rows <= 2 * rows)
            return {rows, n / rows};
    throw InputError("problem_gen: cannot shape a lattice of size " + std::to_string(n));
}

std::vector<Point2> delaunay_points(Index n, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<Point2> pts(n);
    for (auto &p : pts) {
        p.x = rng.uniform();
        p.y = rng.uniform();
    }
    std::sort(pts.begin(), pts.end(),
              [](const Point2 &a, const Point2 &b) { return a.x != b.x ? a.x < b.x : a.y < b.y; });
    return pts;
}

SparseMatrix gen_delaunay_walk(Index n, std::uint64_t seed) {
    if (n < 3)
        throw InputError("problem_gen: Delaunay walk needs n >= 3");
    const auto pts = delaunay_points(n, seed);
    std::set<std::pair<Index, Index>> unique;
    for (const auto &t : delaunay_triangulation(pts)) {
        unique.emplace(t[0], t[1]);
        unique.emplace(t[1], t[2]);
        unique.emplace(t[0], t[2]);
    }
    // Hull edges are always Delaunay; adding them guards against the finite
    // super-triangle clipping a sliver on the boundary.
    for (auto [a, b] : convex_hull_edges(pts))
        unique.emplace(std::min(a, b), std::max(a, b));
    std::vector<WeightedEdge> edges;
    edges.reserve(unique.size());
    for (auto [a, b] : unique)
        edges.push_back({a, b, 1.0});
    return walk_from_edges(n, edges, true);
}

SparseMatrix gen_multiwell(Index n, int wells, std::int64_t mc_samples, std::uint64_t seed) {
    ProblemSpec s;
    s.kind = ProblemKind::MultiWell;
    s.n = n;
    s.wells = wells;
    s.mc_samples = mc_samples;
    s.seed = seed;
    return gen_multiwell(s);
}

SparseMatrix gen_multiwell(const ProblemSpec &spec) {
    const Index n = spec.n;
    if (n < 8)
        throw InputError("problem_gen: multi-well needs n >= 8");
    if (spec.wells != 2 && spec.wells != 4)
        throw InputError("problem_gen: multi-well supports 2 or 4 wells");
    if (spec.mc_samples < 10000)
        throw InputError("problem_gen: multi-well needs at least 1e4 Monte Carlo samples per box");
    if (!(spec.time_step > 0.0) || !(spec.beta > 0.0))
        throw InputError("problem_gen: multi-well time step and beta must be positive");

    const double k = 2.0 * std::numbers::pi * spec.wells;
    const double amp = 0.5 * spec.barrier;
    const double tau = spec.time_step;
    const double noise = std::sqrt(2.0 * tau / spec.beta);
    const double h = 1.0 / n;

    std::int64_t samples = spec.mc_samples;
    for (int attempt = 0; attempt < 3; ++attempt, samples *= 2) {
        Rng rng(spec.seed + static_cast<std::uint64_t>(attempt) * 0x632BE59BD9B4E019ULL);
        std::vector<Triplet> t;
        std::vector<std::int64_t> counts(n, 0);
        std::vector<Index> touched;
        for (Index i = 0; i < n; ++i) {
            touched.clear();
            for (std::int64_t s = 0; s < samples; ++s) {
                const double x = (i + rng.uniform()) * h;
                // V(x) = amp cos(k x), so -V'(x) = amp k sin(k x)
                double y = x + tau * amp * k * std::sin(k * x) + noise * rng.normal();
                while (y < 0.0 || y > 1.0)
                    y = y < 0.0 ? -y : 2.0 - y;
                const Index j = std::min<Index>(static_cast<Index>(y * n), n - 1);
                if (counts[j]++ == 0)
                    touched.push_back(j);
            }
            for (Index j : touched) {
                t.push_back({j, i, static_cast<double>(counts[j]) / static_cast<double>(samples)});
                counts[j] = 0;
            }
        }
        SparseMatrix b = SparseMatrix::from_triplets(n, n, std::move(t));
        if (is_strongly_connected(b))
            return b;
    }
    throw Error("problem_gen: multi-well chain still reducible after 3 sampling attempts");
}

SparseMatrix gen_complex_chain(Index n) {
    if (n < 6)
        throw InputError("problem_gen: complex chain needs n >= 6");
    std::vector<Triplet> t;
    for (Index j = 0; j < n; ++j) {
        std::vector<Index> out;
        if (j + 1 < n)
            out.push_back(j + 1);
        if (j > 0)
            out.push_back(j - 1);
        out.push_back((j + 2) % n);
        const double w = 1.0 / static_cast<double>(out.size());
        for (Index i : out)
            t.push_back({i, j, w});
    }
    return SparseMatrix::from_triplets(n, n, std::move(t));
}

SparseMatrix generate(const ProblemSpec &spec) {
    switch (spec.kind) {
    case ProblemKind::UniformChain:
        return gen_uniform_chain(spec.n);
    case ProblemKind::WeakLinkChain:
        return gen_weak_link_chain(spec.n, spec.epsilon);
    case ProblemKind::Lattice2D: {
        if (spec.rows > 0 && spec.cols > 0) {
            if (spec.n != 0 && spec.rows * spec.cols != spec.n)
                throw InputError("problem_gen: lattice rows*cols must equal n");
            return gen_lattice_2d(spec.rows, spec.cols);
        }
        const auto [r, c] = lattice_shape_for(spec.n);
        return gen_lattice_2d(r, c);
    }
    case ProblemKind::DelaunayWalk:
        return gen_delaunay_walk(spec.n, spec.seed);
    case ProblemKind::MultiWell:
        return gen_multiwell(spec);
    case ProblemKind::ComplexChain:
        return gen_complex_chain(spec.n);
    }
    throw InputError("problem_gen: unknown problem kind");
}

} // namespace markov_ml
