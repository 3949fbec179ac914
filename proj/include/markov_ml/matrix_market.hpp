#pragma once

#include "markov_ml/sparse_matrix.hpp"

#include <filesystem>
#include <iosfwd>

namespace markov_ml {

// Coordinate real general Matrix Market files; 1-based indices on disk.
// Values are written with 17 significant digits so doubles round-trip.

SparseMatrix read_matrix_market(std::istream &in);
SparseMatrix read_matrix_market(const std::filesystem::path &path);

void write_matrix_market(const SparseMatrix &m, std::ostream &out);
void write_matrix_market(const SparseMatrix &m, const std::filesystem::path &path);

} // namespace markov_ml
