#pragma once

#include <vector>

#include "boxtherm/mesh.hpp"

namespace boxtherm {

// Compressed sparse row matrix with a fixed sparsity pattern.
struct SparseMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<int> row_offsets; // size rows + 1
  std::vector<int> col_index;   // size nnz, ascending within each row
  std::vector<double> values;   // size nnz

  int nnz() const { return static_cast<int>(col_index.size()); }

  struct Triplet {
    int row, col;
    double value;
  };
  // Duplicate (row, col) entries are summed.
  static SparseMatrix from_triplets(int rows, int cols,
                                    std::vector<Triplet> triplets);
};

struct DiagonalMatrix {
  std::vector<double> diag;
  int size() const { return static_cast<int>(diag.size()); }
};

// Renumbering between all mesh vertices and the interior subset.
struct IndexMap {
  std::vector<int> full_to_reduced; // -1 for excluded vertices
  std::vector<int> reduced_to_full;

  int full_size() const { return static_cast<int>(full_to_reduced.size()); }
  int reduced_size() const { return static_cast<int>(reduced_to_full.size()); }

  static IndexMap interior(const Mesh& mesh);

  std::vector<double> extract(const std::vector<double>& full) const;
  // Scatters reduced values into a full-size vector, zeros elsewhere.
  std::vector<double> scatter(const std::vector<double>& reduced) const;
};

// Keeps the rows and columns selected by the map, in reduced numbering.
SparseMatrix restrict_matrix(const SparseMatrix& m, const IndexMap& map);

} // namespace boxtherm
