#include "dsimb/neighbors.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

namespace dsimb {

NeighborIndex::NeighborIndex(const Dataset& reference)
    : values_(reference.values()), labels_(reference.labels()) {
  const std::size_t m = reference.num_attributes();
  nominal_.resize(m);
  ranges_.assign(m, 0.0);
  for (std::size_t a = 0; a < m; ++a) {
    nominal_[a] = reference.schema()[a].is_nominal();
    if (nominal_[a] || reference.empty()) continue;
    double lo = values_[a], hi = values_[a];
    for (std::size_t i = 1; i < labels_.size(); ++i) {
      lo = std::min(lo, values_[i * m + a]);
      hi = std::max(hi, values_[i * m + a]);
    }
    ranges_[a] = hi - lo;
  }
}

double NeighborIndex::squared(std::span<const double> a, std::span<const double> b) const {
  double sum = 0.0;
  for (std::size_t j = 0; j < nominal_.size(); ++j) {
    double t;
    if (nominal_[j]) t = a[j] == b[j] ? 0.0 : 1.0;
    else t = ranges_[j] > 0.0 ? (a[j] - b[j]) / ranges_[j] : 0.0;
    sum += t * t;
  }
  return sum;
}

double NeighborIndex::distance(std::span<const double> a, std::span<const double> b) const {
  if (a.size() != nominal_.size() || b.size() != nominal_.size()) {
    throw std::invalid_argument("vector width does not match the index schema (" + std::to_string(nominal_.size()) +
                                " attributes)");
  }
  return std::sqrt(squared(a, b));
}

KnnResult NeighborIndex::knn(std::span<const double> query, std::size_t k, std::optional<int> filter,
                             std::optional<std::size_t> exclude) const {
  if (k == 0) throw std::invalid_argument("k must be at least 1");
  if (query.size() != nominal_.size()) throw std::invalid_argument("query width does not match the index schema");

  std::vector<std::pair<double, std::size_t>> cand;
  cand.reserve(labels_.size());
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (filter && labels_[i] != *filter) continue;
    if (exclude && i == *exclude) continue;
    cand.emplace_back(std::sqrt(squared(query, row(i))), i);
  }
  if (cand.empty()) throw DataError("no candidate neighbours");

  KnnResult r;
  r.shortfall = cand.size() < k;
  const std::size_t take = std::min(k, cand.size());
  std::partial_sort(cand.begin(), cand.begin() + static_cast<std::ptrdiff_t>(take), cand.end());
  r.indices.reserve(take);
  r.distances.reserve(take);
  for (std::size_t i = 0; i < take; ++i) {
    r.distances.push_back(cand[i].first);
    r.indices.push_back(cand[i].second);
  }
  return r;
}

}  // namespace dsimb
