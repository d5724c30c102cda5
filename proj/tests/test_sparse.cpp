#include <vector>

#include "doctest.h"

#include "boxtherm/mesh.hpp"
#include "boxtherm/sparse.hpp"

using namespace boxtherm;

TEST_SUITE("sparse") {

TEST_CASE("from_triplets sorts columns and sums duplicates") {
  const SparseMatrix m = SparseMatrix::from_triplets(
      2, 3, {{1, 2, 5.0}, {0, 1, 1.0}, {1, 0, 2.0}, {0, 1, 3.0}});
  CHECK(m.rows == 2);
  CHECK(m.cols == 3);
  REQUIRE(m.nnz() == 3);
  CHECK(m.row_offsets == std::vector<int>{0, 1, 3});
  CHECK(m.col_index == std::vector<int>{1, 0, 2});
  CHECK(m.values == std::vector<double>{4.0, 2.0, 5.0});
}

TEST_CASE("interior index map of the n=2 mesh keeps only the center") {
  const Mesh mesh = generate_structured_mesh(2);
  const IndexMap map = IndexMap::interior(mesh);
  CHECK(map.full_size() == 9);
  REQUIRE(map.reduced_size() == 1);
  const int center = map.reduced_to_full[0];
  CHECK(mesh.point(center).x == doctest::Approx(0.5));
  CHECK(map.full_to_reduced[static_cast<size_t>(center)] == 0);
  int excluded = 0;
  for (int r : map.full_to_reduced)
    if (r == -1) ++excluded;
  CHECK(excluded == 8);
}

TEST_CASE("extract and scatter invert each other on the interior") {
  const Mesh mesh = generate_structured_mesh(4);
  const IndexMap map = IndexMap::interior(mesh);
  std::vector<double> full(static_cast<size_t>(mesh.vertex_count()));
  for (size_t i = 0; i < full.size(); ++i) full[i] = static_cast<double>(i) + 1.0;
  const std::vector<double> reduced = map.extract(full);
  REQUIRE(static_cast<int>(reduced.size()) == map.reduced_size());
  const std::vector<double> back = map.scatter(reduced);
  for (int v = 0; v < mesh.vertex_count(); ++v) {
    if (mesh.boundary[static_cast<size_t>(v)])
      CHECK(back[static_cast<size_t>(v)] == 0.0);
    else
      CHECK(back[static_cast<size_t>(v)] == full[static_cast<size_t>(v)]);
  }
}

TEST_CASE("restrict_matrix keeps interior rows and columns") {
  // 3x3 with one excluded index in the middle
  const SparseMatrix m = SparseMatrix::from_triplets(
      3, 3,
      {{0, 0, 2.0}, {0, 1, -1.0}, {1, 0, -1.0}, {1, 1, 2.0}, {1, 2, -1.0},
       {2, 1, -1.0}, {2, 2, 2.0}, {0, 2, 7.0}, {2, 0, 7.0}});
  IndexMap map;
  map.full_to_reduced = {0, -1, 1};
  map.reduced_to_full = {0, 2};
  const SparseMatrix r = restrict_matrix(m, map);
  CHECK(r.rows == 2);
  CHECK(r.cols == 2);
  REQUIRE(r.nnz() == 4);
  CHECK(r.col_index == std::vector<int>{0, 1, 0, 1});
  CHECK(r.values == std::vector<double>{2.0, 7.0, 7.0, 2.0});
}

} // TEST_SUITE
