#include "markov_ml/aggregation.hpp"

#include "markov_ml/error.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace markov_ml {

Aggregation::Aggregation(std::vector<Index> membership) : membership_(std::move(membership)) {
    Index mx = -1;
    for (Index m : membership_) {
        if (m < 0)
            throw InputError("aggregation: negative aggregate index");
        mx = std::max(mx, m);
    }
    n_coarse_ = mx + 1;
    std::vector<char> seen(static_cast<std::size_t>(n_coarse_), 0);
    for (Index m : membership_)
        seen[m] = 1;
    if (std::find(seen.begin(), seen.end(), 0) != seen.end())
        throw InputError("aggregation: membership is not surjective (empty aggregate)");
}

Aggregation Aggregation::singletons(Index n) {
    std::vector<Index> m(static_cast<std::size_t>(n));
    std::iota(m.begin(), m.end(), Index{0});
    return Aggregation(std::move(m));
}

std::vector<Index> Aggregation::sizes() const {
    std::vector<Index> s(static_cast<std::size_t>(n_coarse_), 0);
    for (Index m : membership_)
        ++s[m];
    return s;
}

void AggregationConfig::validate() const {
    if (target_size < 2)
        throw InputError("aggregation: target_size must be at least 2");
    if (!(theta > 0.0 && theta < 1.0))
        throw InputError("aggregation: theta must lie in (0, 1)");
}

SparseMatrix strength_matrix(const SparseMatrix &b, std::span<const double> x, bool sign_constrained) {
    if (x.size() != static_cast<std::size_t>(b.cols()))
        throw InputError("aggregation: strength vector does not match the matrix");
    const auto off = b.row_offsets();
    const auto col = b.col_indices();
    const auto val = b.values();
    std::vector<Triplet> t;
    t.reserve(2 * static_cast<std::size_t>(b.nnz()));
    for (Index k = 0; k < b.rows(); ++k) {
        for (Offset e = off[k]; e < off[k + 1]; ++e) {
            const Index l = col[e];
            if (l == k)
                continue;
            if (sign_constrained && x[k] * x[l] <= 0.0)
                continue;
            const double s = 0.5 * std::abs(val[e] * x[l]);
            if (s == 0.0)
                continue;
            t.push_back({k, l, s});
            t.push_back({l, k, s});
        }
    }
    return SparseMatrix::from_triplets(b.rows(), b.cols(), std::move(t));
}

Aggregation aggregate_bottom_up(const SparseMatrix &s, const AggregationConfig &cfg) {
    cfg.validate();
    const Index n = s.rows();
    const auto off = s.row_offsets();
    const auto col = s.col_indices();
    const auto val = s.values();

    std::vector<double> max_strength(static_cast<std::size_t>(n), 0.0);
    for (Index i = 0; i < n; ++i)
        for (Offset e = off[i]; e < off[i + 1]; ++e)
            if (col[e] != i)
                max_strength[i] = std::max(max_strength[i], val[e]);

    std::vector<Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Index{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](Index a, Index b) { return max_strength[a] > max_strength[b]; });

    std::vector<Index> agg(static_cast<std::size_t>(n), -1);
    std::vector<double> conn(static_cast<std::size_t>(n), 0.0);
    std::vector<Index> touched;
    std::vector<Index> members;
    Index next_id = 0;

    for (Index seed : order) {
        if (agg[seed] != -1 || max_strength[seed] <= 0.0)
            continue;
        const double threshold = cfg.theta * max_strength[seed];
        members.assign(1, seed);
        agg[seed] = next_id;
        touched.clear();
        auto absorb = [&](Index v) {
            for (Offset e = off[v]; e < off[v + 1]; ++e) {
                const Index w = col[e];
                if (agg[w] != -1)
                    continue;
                if (conn[w] == 0.0)
                    touched.push_back(w);
                conn[w] += val[e];
            }
        };
        absorb(seed);
        while (static_cast<Index>(members.size()) < cfg.target_size) {
            Index best = -1;
            for (Index w : touched) {
                if (agg[w] != -1 || conn[w] < threshold || conn[w] <= 0.0)
                    continue;
                if (best == -1 || conn[w] > conn[best] || (conn[w] == conn[best] && w < best))
                    best = w;
            }
            if (best == -1)
                break;
            agg[best] = next_id;
            members.push_back(best);
            absorb(best);
        }
        for (Index w : touched)
            conn[w] = 0.0;
        if (members.size() == 1) {
            agg[seed] = -1;  // leftover; revisited below
            continue;
        }
        ++next_id;
    }

    // Leftovers join their strongest-connected aggregate, else stay alone.
    std::vector<Index> joined(static_cast<std::size_t>(n), -1);
    for (Index i = 0; i < n; ++i) {
        if (agg[i] != -1)
            continue;
        Index best = -1;
        double best_s = 0.0;
        for (Offset e = off[i]; e < off[i + 1]; ++e) {
            const Index a = agg[col[e]];
            if (a == -1)
                continue;
            double total = 0.0;
            for (Offset f = off[i]; f < off[i + 1]; ++f)
                if (agg[col[f]] == a)
                    total += val[f];
            if (total > best_s || (total == best_s && best != -1 && a < best)) {
                best = a;
                best_s = total;
            }
        }
        joined[i] = best;
    }
    for (Index i = 0; i < n; ++i) {
        if (agg[i] != -1)
            continue;
        agg[i] = joined[i] != -1 ? joined[i] : next_id++;
    }
    return Aggregation(std::move(agg));
}

Vector restrict_sum(const Aggregation &agg, std::span<const double> y) {
    if (y.size() != static_cast<std::size_t>(agg.n_fine()))
        throw InputError("aggregation: restrict dimension mismatch");
    Vector out(static_cast<std::size_t>(agg.n_coarse()), 0.0);
    const auto &m = agg.membership();
    for (std::size_t k = 0; k < y.size(); ++k)
        out[m[k]] += y[k];
    return out;
}

Vector aggregate_proportions(const Aggregation &agg, std::span<const double> x_ref) {
    const Vector sums = restrict_sum(agg, x_ref);
    const auto sizes = agg.sizes();
    const auto &m = agg.membership();
    Vector prop(x_ref.size());
    for (std::size_t k = 0; k < x_ref.size(); ++k) {
        const Index j = m[k];
        if (sizes[j] == 1) {
            prop[k] = 1.0;
            continue;
        }
        if (sums[j] == 0.0)
            throw CancellationError("aggregation: aggregate " + std::to_string(j) +
                                    " has zero reference sum");
        prop[k] = x_ref[k] / sums[j];
    }
    return prop;
}

Vector prolong_with(const Aggregation &agg, std::span<const double> proportions,
                    std::span<const double> x_coarse) {
    if (x_coarse.size() != static_cast<std::size_t>(agg.n_coarse()) ||
        proportions.size() != static_cast<std::size_t>(agg.n_fine()))
        throw InputError("aggregation: prolong dimension mismatch");
    const auto &m = agg.membership();
    Vector out(proportions.size());
    for (std::size_t k = 0; k < out.size(); ++k)
        out[k] = proportions[k] * x_coarse[m[k]];
    return out;
}

Vector prolong(const Aggregation &agg, std::span<const double> x_fine_ref,
               std::span<const double> x_coarse) {
    // Singletons with a zero reference would get proportion 1 from
    // aggregate_proportions; the exact formula needs a nonzero sum everywhere.
    const Vector sums = restrict_sum(agg, x_fine_ref);
    for (std::size_t j = 0; j < sums.size(); ++j)
        if (sums[j] == 0.0)
            throw CancellationError("aggregation: aggregate " + std::to_string(j) +
                                    " has zero reference sum");
    return prolong_with(agg, aggregate_proportions(agg, x_fine_ref), x_coarse);
}

SparseMatrix aggregation_matrix(const Aggregation &agg) {
    const Index n = agg.n_fine();
    std::vector<Offset> offsets(static_cast<std::size_t>(n) + 1);
    std::iota(offsets.begin(), offsets.end(), Offset{0});
    return SparseMatrix(n, agg.n_coarse(), std::move(offsets), agg.membership(),
                        Vector(static_cast<std::size_t>(n), 1.0));
}

void write_aggregation_csv(const Aggregation &agg, std::ostream &out) {
    out << "fine_index,aggregate_index\n";
    const auto &m = agg.membership();
    for (std::size_t k = 0; k < m.size(); ++k)
        out << k << ',' << m[k] << '\n';
}

} // namespace markov_ml
