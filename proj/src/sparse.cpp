#include "boxtherm/sparse.hpp"

#include <algorithm>

#include "boxtherm/errors.hpp"

namespace boxtherm {

SparseMatrix SparseMatrix::from_triplets(int rows, int cols,
                                         std::vector<Triplet> triplets) {
  for (const Triplet& t : triplets)
    if (t.row < 0 || t.row >= rows || t.col < 0 || t.col >= cols)
      throw Error("triplet index out of range");
  std::sort(triplets.begin(), triplets.end(),
            [](const Triplet& a, const Triplet& b) {
              return a.row != b.row ? a.row < b.row : a.col < b.col;
            });

  SparseMatrix m;
  m.rows = rows;
  m.cols = cols;
  m.row_offsets.assign(static_cast<size_t>(rows) + 1, 0);
  for (size_t i = 0; i < triplets.size();) {
    size_t j = i;
    double sum = 0.0;
    while (j < triplets.size() && triplets[j].row == triplets[i].row &&
           triplets[j].col == triplets[i].col)
      sum += triplets[j++].value;
    m.col_index.push_back(triplets[i].col);
    m.values.push_back(sum);
    ++m.row_offsets[static_cast<size_t>(triplets[i].row) + 1];
    i = j;
  }
  for (int r = 0; r < rows; ++r)
    m.row_offsets[static_cast<size_t>(r) + 1] +=
        m.row_offsets[static_cast<size_t>(r)];
  return m;
}

IndexMap IndexMap::interior(const Mesh& mesh) {
  IndexMap map;
  map.full_to_reduced.assign(mesh.vertices.size(), -1);
  for (int v = 0; v < mesh.vertex_count(); ++v)
    if (!mesh.boundary[static_cast<size_t>(v)]) {
      map.full_to_reduced[static_cast<size_t>(v)] =
          static_cast<int>(map.reduced_to_full.size());
      map.reduced_to_full.push_back(v);
    }
  return map;
}

std::vector<double> IndexMap::extract(const std::vector<double>& full) const {
  if (static_cast<int>(full.size()) != full_size())
    throw Error("IndexMap::extract: size mismatch");
  std::vector<double> out(reduced_to_full.size());
  for (size_t i = 0; i < reduced_to_full.size(); ++i)
    out[i] = full[static_cast<size_t>(reduced_to_full[i])];
  return out;
}

std::vector<double> IndexMap::scatter(const std::vector<double>& reduced) const {
  if (static_cast<int>(reduced.size()) != reduced_size())
    throw Error("IndexMap::scatter: size mismatch");
  std::vector<double> out(full_to_reduced.size(), 0.0);
  for (size_t i = 0; i < reduced_to_full.size(); ++i)
    out[static_cast<size_t>(reduced_to_full[i])] = reduced[i];
  return out;
}

SparseMatrix restrict_matrix(const SparseMatrix& m, const IndexMap& map) {
  if (m.rows != map.full_size() || m.cols != map.full_size())
    throw Error("restrict_matrix: size mismatch");
  std::vector<SparseMatrix::Triplet> triplets;
  for (int r = 0; r < m.rows; ++r) {
    const int rr = map.full_to_reduced[static_cast<size_t>(r)];
    if (rr < 0) continue;
    for (int k = m.row_offsets[static_cast<size_t>(r)];
         k < m.row_offsets[static_cast<size_t>(r) + 1]; ++k) {
      const int cc =
          map.full_to_reduced[static_cast<size_t>(m.col_index[static_cast<size_t>(k)])];
      if (cc < 0) continue;
      triplets.push_back({rr, cc, m.values[static_cast<size_t>(k)]});
    }
  }
  return SparseMatrix::from_triplets(map.reduced_size(), map.reduced_size(),
                                     std::move(triplets));
}

} // namespace boxtherm
