#include "dsimb/kernels.hpp"

#include <cstdint>

#include "dsimb/parallel.hpp"

namespace dsimb {

std::vector<int> prediction_matrix(std::span<const TrainedTree> trees, const Dataset& d) {
  const std::size_t n = d.size();
  const auto cells = static_cast<std::int64_t>(trees.size() * n);
  std::vector<int> out(trees.size() * n);
#pragma omp parallel for schedule(static) num_threads(thread_count())
  for (std::int64_t c = 0; c < cells; ++c) {
    const auto cell = static_cast<std::size_t>(c);
    out[cell] = trees[cell / n].predict(d.row(cell % n));
  }
  return out;
}

std::vector<KnnResult> batch_knn(const NeighborIndex& index, const Dataset& queries, std::size_t k) {
  const auto n = static_cast<std::int64_t>(queries.size());
  std::vector<KnnResult> out(queries.size());
#pragma omp parallel for schedule(dynamic, 16) num_threads(thread_count())
  for (std::int64_t q = 0; q < n; ++q) {
    out[static_cast<std::size_t>(q)] = index.knn(queries.row(static_cast<std::size_t>(q)), k);
  }
  return out;
}

namespace reference {

std::vector<int> prediction_matrix(std::span<const TrainedTree> trees, const Dataset& d) {
  std::vector<int> out;
  out.reserve(trees.size() * d.size());
  for (const auto& t : trees)
    for (std::size_t j = 0; j < d.size(); ++j) out.push_back(t.predict(d.row(j)));
  return out;
}

std::vector<KnnResult> batch_knn(const NeighborIndex& index, const Dataset& queries, std::size_t k) {
  std::vector<KnnResult> out;
  out.reserve(queries.size());
  for (std::size_t q = 0; q < queries.size(); ++q) out.push_back(index.knn(queries.row(q), k));
  return out;
}

}  // namespace reference

}  // namespace dsimb
