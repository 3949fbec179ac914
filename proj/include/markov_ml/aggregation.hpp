#pragma once

#include "markov_ml/sparse_matrix.hpp"

#include <ostream>
#include <span>
#include <vector>

namespace markov_ml {

/// Partition of fine indices into aggregates (the 0/1 matrix Q).
class Aggregation {
public:
    Aggregation() = default;
    /// Validates that membership is surjective onto [0, max+1).
    explicit Aggregation(std::vector<Index> membership);

    static Aggregation singletons(Index n);

    Index n_fine() const noexcept { return static_cast<Index>(membership_.size()); }
    Index n_coarse() const noexcept { return n_coarse_; }
    const std::vector<Index> &membership() const noexcept { return membership_; }
    std::vector<Index> sizes() const;

    friend bool operator==(const Aggregation &, const Aggregation &) = default;

private:
    std::vector<Index> membership_;
    Index n_coarse_ = 0;
};

struct AggregationConfig {
    Index target_size = 2;
    double theta = 0.1;

    void validate() const;
};

/// Symmetrized strength of connection (S + S^T)/2 with S = B diag(|x|),
/// diagonal removed. With sign_constrained, entries with x_k x_l <= 0 are
/// dropped. For positive x this is B diag(x+).
SparseMatrix strength_matrix(const SparseMatrix &b, std::span<const double> x, bool sign_constrained);

/// Greedy seeded growth; deterministic, ties go to the smallest index.
Aggregation aggregate_bottom_up(const SparseMatrix &strength, const AggregationConfig &cfg);

/// Q^T y: per-aggregate sums.
Vector restrict_sum(const Aggregation &agg, std::span<const double> y);

/// Relative proportion of each fine entry within its aggregate,
/// x_ref[k] / (Q^T x_ref)[agg(k)]. Throws CancellationError on a zero sum.
Vector aggregate_proportions(const Aggregation &agg, std::span<const double> x_ref);

/// P (diag(Q^T x_ref))^{-1} x_coarse.
Vector prolong(const Aggregation &agg, std::span<const double> x_fine_ref,
               std::span<const double> x_coarse);
/// Same as prolong with precomputed proportions.
Vector prolong_with(const Aggregation &agg, std::span<const double> proportions,
                    std::span<const double> x_coarse);

/// Q as a sparse n_fine x n_coarse matrix.
SparseMatrix aggregation_matrix(const Aggregation &agg);

/// CSV dump: header "fine_index,aggregate_index".
void write_aggregation_csv(const Aggregation &agg, std::ostream &out);

} // namespace markov_ml
