#include "markov_ml/sparse_matrix.hpp"

#include "markov_ml/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace markov_ml {

SparseMatrix::SparseMatrix(Index rows, Index cols, std::vector<Offset> row_offsets,
                           std::vector<Index> col_indices, std::vector<double> values)
    : rows_(rows), cols_(cols) {
    if (rows < 0 || cols < 0)
        throw InputError("sparse_core: negative dimension");
    if (row_offsets.size() != static_cast<std::size_t>(rows) + 1)
        throw InputError("sparse_core: row_offsets must have rows+1 entries");
    if (row_offsets.front() != 0)
        throw InputError("sparse_core: row_offsets must start at 0");
    if (col_indices.size() != values.size() ||
        row_offsets.back() != static_cast<Offset>(values.size()))
        throw InputError("sparse_core: row_offsets/col_indices/values length mismatch");

    row_offsets_.assign(1, 0);
    row_offsets_.reserve(row_offsets.size());
    col_indices_.reserve(col_indices.size());
    values_.reserve(values.size());
    for (Index i = 0; i < rows; ++i) {
        if (row_offsets[i + 1] < row_offsets[i])
            throw InputError("sparse_core: row_offsets not nondecreasing at row " +
                             std::to_string(i));
        Index prev = -1;
        for (Offset k = row_offsets[i]; k < row_offsets[i + 1]; ++k) {
            const Index j = col_indices[k];
            if (j < 0 || j >= cols)
                throw InputError("sparse_core: column index out of range in row " +
                                 std::to_string(i));
            if (j <= prev)
                throw InputError("sparse_core: column indices not strictly increasing in row " +
                                 std::to_string(i));
            prev = j;
            if (values[k] == 0.0)
                continue;
            col_indices_.push_back(j);
            values_.push_back(values[k]);
        }
        row_offsets_.push_back(static_cast<Offset>(values_.size()));
    }
}

SparseMatrix SparseMatrix::from_triplets(Index rows, Index cols, std::vector<Triplet> triplets) {
    for (const auto &t : triplets)
        if (t.row < 0 || t.row >= rows || t.col < 0 || t.col >= cols)
            throw InputError("sparse_core: triplet (" + std::to_string(t.row) + "," +
                             std::to_string(t.col) + ") out of range");
    std::stable_sort(triplets.begin(), triplets.end(), [](const Triplet &a, const Triplet &b) {
        return a.row != b.row ? a.row < b.row : a.col < b.col;
    });

    std::vector<Offset> offsets(static_cast<std::size_t>(rows) + 1, 0);
    std::vector<Index> cols_out;
    std::vector<double> vals_out;
    cols_out.reserve(triplets.size());
    vals_out.reserve(triplets.size());
    std::size_t k = 0;
    for (Index i = 0; i < rows; ++i) {
        while (k < triplets.size() && triplets[k].row == i) {
            const Index j = triplets[k].col;
            double v = 0.0;
            while (k < triplets.size() && triplets[k].row == i && triplets[k].col == j)
                v += triplets[k++].value;
            if (v != 0.0) {
                cols_out.push_back(j);
                vals_out.push_back(v);
            }
        }
        offsets[i + 1] = static_cast<Offset>(vals_out.size());
    }
    return SparseMatrix(rows, cols, std::move(offsets), std::move(cols_out), std::move(vals_out));
}

SparseMatrix SparseMatrix::identity(Index n) {
    std::vector<Offset> offsets(static_cast<std::size_t>(n) + 1);
    std::iota(offsets.begin(), offsets.end(), Offset{0});
    std::vector<Index> cols(n);
    std::iota(cols.begin(), cols.end(), Index{0});
    return SparseMatrix(n, n, std::move(offsets), std::move(cols), std::vector<double>(n, 1.0));
}

double SparseMatrix::at(Index i, Index j) const {
    if (i < 0 || i >= rows_ || j < 0 || j >= cols_)
        throw InputError("sparse_core: index out of range");
    const auto first = col_indices_.begin() + row_offsets_[i];
    const auto last = col_indices_.begin() + row_offsets_[i + 1];
    const auto it = std::lower_bound(first, last, j);
    if (it == last || *it != j)
        return 0.0;
    return values_[static_cast<std::size_t>(it - col_indices_.begin())];
}

Vector SparseMatrix::diagonal() const {
    Vector d(static_cast<std::size_t>(std::min(rows_, cols_)), 0.0);
    for (Index i = 0; i < static_cast<Index>(d.size()); ++i)
        d[i] = at(i, i);
    return d;
}

Vector SparseMatrix::column_sums() const {
    Vector s(cols_, 0.0);
    for (std::size_t k = 0; k < values_.size(); ++k)
        s[col_indices_[k]] += values_[k];
    return s;
}

SparseMatrix SparseMatrix::transpose() const {
    std::vector<Offset> offsets(static_cast<std::size_t>(cols_) + 1, 0);
    for (Index j : col_indices_)
        ++offsets[j + 1];
    std::partial_sum(offsets.begin(), offsets.end(), offsets.begin());
    std::vector<Index> cols(values_.size());
    std::vector<double> vals(values_.size());
    std::vector<Offset> next(offsets.begin(), offsets.end() - 1);
    for (Index i = 0; i < rows_; ++i) {
        for (Offset k = row_offsets_[i]; k < row_offsets_[i + 1]; ++k) {
            const Offset dst = next[col_indices_[k]]++;
            cols[dst] = i;
            vals[dst] = values_[k];
        }
    }
    return SparseMatrix(cols_, rows_, std::move(offsets), std::move(cols), std::move(vals));
}

bool SparseMatrix::pattern_symmetric() const {
    if (rows_ != cols_)
        return false;
    const SparseMatrix t = transpose();
    return row_offsets_ == t.row_offsets_ && col_indices_ == t.col_indices_;
}

std::vector<Triplet> SparseMatrix::to_triplets() const {
    std::vector<Triplet> out;
    out.reserve(values_.size());
    for (Index i = 0; i < rows_; ++i)
        for (Offset k = row_offsets_[i]; k < row_offsets_[i + 1]; ++k)
            out.push_back({i, col_indices_[k], values_[k]});
    return out;
}

void spmv(const SparseMatrix &m, std::span<const double> x, std::span<double> y) {
    if (x.size() != static_cast<std::size_t>(m.cols()) ||
        y.size() != static_cast<std::size_t>(m.rows()))
        throw InputError("sparse_core: spmv dimension mismatch (" + std::to_string(m.rows()) +
                         "x" + std::to_string(m.cols()) + " times " +
                         std::to_string(x.size()) + ")");
    const auto off = m.row_offsets();
    const auto col = m.col_indices();
    const auto val = m.values();
    for (Index i = 0; i < m.rows(); ++i) {
        double s = 0.0;
        for (Offset k = off[i]; k < off[i + 1]; ++k)
            s += val[k] * x[col[k]];
        y[i] = s;
    }
}

Vector spmv(const SparseMatrix &m, std::span<const double> x) {
    Vector y(m.rows());
    spmv(m, x, y);
    return y;
}

SparseMatrix multiply(const SparseMatrix &a, const SparseMatrix &b) {
    if (a.cols() != b.rows())
        throw InputError("sparse_core: multiply dimension mismatch");
    const auto aoff = a.row_offsets();
    const auto acol = a.col_indices();
    const auto aval = a.values();
    const auto boff = b.row_offsets();
    const auto bcol = b.col_indices();
    const auto bval = b.values();

    std::vector<Offset> offsets(static_cast<std::size_t>(a.rows()) + 1, 0);
    std::vector<Index> cols;
    std::vector<double> vals;
    std::vector<double> acc(b.cols(), 0.0);
    std::vector<Index> marker(b.cols(), -1);
    std::vector<Index> touched;
    for (Index i = 0; i < a.rows(); ++i) {
        touched.clear();
        for (Offset ka = aoff[i]; ka < aoff[i + 1]; ++ka) {
            const Index k = acol[ka];
            const double av = aval[ka];
            for (Offset kb = boff[k]; kb < boff[k + 1]; ++kb) {
                const Index j = bcol[kb];
                if (marker[j] != i) {
                    marker[j] = i;
                    acc[j] = 0.0;
                    touched.push_back(j);
                }
                acc[j] += av * bval[kb];
            }
        }
        std::sort(touched.begin(), touched.end());
        for (Index j : touched) {
            if (acc[j] != 0.0) {
                cols.push_back(j);
                vals.push_back(acc[j]);
            }
        }
        offsets[i + 1] = static_cast<Offset>(vals.size());
    }
    return SparseMatrix(a.rows(), b.cols(), std::move(offsets), std::move(cols), std::move(vals));
}

SparseMatrix scale_and_shift(const SparseMatrix &m, double alpha, double shift) {
    if (m.rows() != m.cols())
        throw InputError("sparse_core: scale_and_shift needs a square matrix");
    auto t = m.to_triplets();
    for (auto &e : t)
        e.value *= alpha;
    if (shift != 0.0)
        for (Index i = 0; i < m.rows(); ++i)
            t.push_back({i, i, shift});
    return SparseMatrix::from_triplets(m.rows(), m.cols(), std::move(t));
}

SparseMatrix scale_columns(const SparseMatrix &m, std::span<const double> d) {
    if (d.size() != static_cast<std::size_t>(m.cols()))
        throw InputError("sparse_core: scale_columns dimension mismatch");
    std::vector<Offset> offsets(m.row_offsets().begin(), m.row_offsets().end());
    std::vector<Index> cols(m.col_indices().begin(), m.col_indices().end());
    std::vector<double> vals(m.values().begin(), m.values().end());
    for (std::size_t k = 0; k < vals.size(); ++k)
        vals[k] *= d[cols[k]];
    return SparseMatrix(m.rows(), m.cols(), std::move(offsets), std::move(cols), std::move(vals));
}

bool validate_column_stochastic(const SparseMatrix &m, double tol) {
    if (m.rows() != m.cols())
        return false;
    for (double v : m.values())
        if (!(v >= -tol))
            return false;
    return column_sum_defect(m) <= tol;
}

double column_sum_defect(const SparseMatrix &m) {
    double worst = 0.0;
    for (double s : m.column_sums())
        worst = std::max(worst, std::abs(s - 1.0));
    return worst;
}

namespace {

std::size_t reachable_from_zero(const SparseMatrix &m) {
    const auto off = m.row_offsets();
    const auto col = m.col_indices();
    std::vector<char> seen(m.rows(), 0);
    std::vector<Index> stack{0};
    seen[0] = 1;
    std::size_t count = 1;
    while (!stack.empty()) {
        const Index i = stack.back();
        stack.pop_back();
        for (Offset k = off[i]; k < off[i + 1]; ++k) {
            const Index j = col[k];
            if (!seen[j]) {
                seen[j] = 1;
                ++count;
                stack.push_back(j);
            }
        }
    }
    return count;
}

} // namespace

bool is_strongly_connected(const SparseMatrix &m) {
    if (m.rows() != m.cols())
        return false;
    if (m.rows() <= 1)
        return true;
    const auto n = static_cast<std::size_t>(m.rows());
    return reachable_from_zero(m) == n && reachable_from_zero(m.transpose()) == n;
}

} // namespace markov_ml
