#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "dsimb/dataset.hpp"
#include "dsimb/neighbors.hpp"
#include "dsimb/tree.hpp"

namespace dsimb {

/// predictions[t * |d| + j] = trees[t].predict(d.row(j)). OpenMP over cells.
std::vector<int> prediction_matrix(std::span<const TrainedTree> trees, const Dataset& d);

/// knn(q, k) for every row of queries. OpenMP over queries.
std::vector<KnnResult> batch_knn(const NeighborIndex& index, const Dataset& queries, std::size_t k);

/// Serial versions of the kernels, kept as the reference for tests and benchmarks.
namespace reference {
std::vector<int> prediction_matrix(std::span<const TrainedTree> trees, const Dataset& d);
std::vector<KnnResult> batch_knn(const NeighborIndex& index, const Dataset& queries, std::size_t k);
}  // namespace reference

}  // namespace dsimb
