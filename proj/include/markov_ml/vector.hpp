#pragma once

#include <span>
#include <vector>

namespace markov_ml {

/// Dense real vector. Plain std::vector so iterates move cheaply between
/// levels and interoperate with std algorithms.
using Vector = std::vector<double>;

double dot(std::span<const double> x, std::span<const double> y);
double norm1(std::span<const double> x);
double norm2(std::span<const double> x);
double norm_inf(std::span<const double> x);
double sum(std::span<const double> x);

/// y += a * x
void axpy(double a, std::span<const double> x, std::span<double> y);
void scale(double a, std::span<double> x);

/// ||x - y||_1
double distance1(std::span<const double> x, std::span<const double> y);

/// Scales x to unit l1 norm with its first nonzero entry positive.
/// Throws BreakdownError if x is identically zero.
void normalize_l1(std::span<double> x);

/// True if every entry is finite.
bool all_finite(std::span<const double> x);

/// min over scalar t of ||a - t b||_2, i.e. (a,b)/(b,b).
double least_squares_scale(std::span<const double> a, std::span<const double> b);

} // namespace markov_ml
