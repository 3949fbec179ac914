#include "markov_ml/vector.hpp"

#include "markov_ml/error.hpp"

#include <algorithm>
#include <cmath>

namespace markov_ml {

namespace {

void check_same_size(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size())
        throw InputError("vector: size mismatch (" + std::to_string(x.size()) +
                         " vs " + std::to_string(y.size()) + ")");
}

} // namespace

double dot(std::span<const double> x, std::span<const double> y) {
    check_same_size(x, y);
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i)
        s += x[i] * y[i];
    return s;
}

double norm1(std::span<const double> x) {
    double s = 0.0;
    for (double v : x)
        s += std::abs(v);
    return s;
}

double norm2(std::span<const double> x) {
    double s = 0.0;
    for (double v : x)
        s += v * v;
    return std::sqrt(s);
}

double norm_inf(std::span<const double> x) {
    double m = 0.0;
    for (double v : x)
        m = std::max(m, std::abs(v));
    return m;
}

double sum(std::span<const double> x) {
    double s = 0.0;
    for (double v : x)
        s += v;
    return s;
}

void axpy(double a, std::span<const double> x, std::span<double> y) {
    check_same_size(x, y);
    for (std::size_t i = 0; i < x.size(); ++i)
        y[i] += a * x[i];
}

void scale(double a, std::span<double> x) {
    for (double &v : x)
        v *= a;
}

double distance1(std::span<const double> x, std::span<const double> y) {
    check_same_size(x, y);
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i)
        s += std::abs(x[i] - y[i]);
    return s;
}

void normalize_l1(std::span<double> x) {
    const double n = norm1(x);
    if (!(n > 0.0) || !std::isfinite(n))
        throw BreakdownError("vector: cannot normalize a zero or non-finite vector");
    auto first = std::find_if(x.begin(), x.end(), [](double v) { return v != 0.0; });
    const double s = (*first < 0.0 ? -1.0 : 1.0) / n;
    for (double &v : x)
        v *= s;
}

bool all_finite(std::span<const double> x) {
    return std::all_of(x.begin(), x.end(), [](double v) { return std::isfinite(v); });
}

double least_squares_scale(std::span<const double> a, std::span<const double> b) {
    const double bb = dot(b, b);
    if (bb == 0.0)
        return 0.0;
    return dot(a, b) / bb;
}

} // namespace markov_ml
