#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "dsimb/dataset.hpp"

namespace dsimb {

struct KnnResult {
  std::vector<std::size_t> indices;  // ascending distance, ties by index
  std::vector<double> distances;
  bool shortfall = false;            // fewer than k candidates existed
};

/// Exact nearest-neighbour search under the heterogeneous Euclidean-overlap
/// metric. Numeric differences are divided by the attribute range observed in
/// the reference set; nominal attributes contribute 0 or 1.
class NeighborIndex {
 public:
  NeighborIndex() = default;
  explicit NeighborIndex(const Dataset& reference);

  std::size_t size() const { return labels_.size(); }
  std::size_t num_attributes() const { return nominal_.size(); }
  int label(std::size_t i) const { return labels_[i]; }
  std::span<const double> row(std::size_t i) const {
    return {values_.data() + i * nominal_.size(), nominal_.size()};
  }
  const std::vector<double>& ranges() const { return ranges_; }

  /// Throws std::invalid_argument when a or b does not match the schema width.
  double distance(std::span<const double> a, std::span<const double> b) const;

  /// The k nearest references, optionally restricted to one class and
  /// skipping one reference position. Throws DataError when no candidate
  /// exists and std::invalid_argument when k == 0.
  KnnResult knn(std::span<const double> query, std::size_t k, std::optional<int> filter = std::nullopt,
                std::optional<std::size_t> exclude = std::nullopt) const;

 private:
  double squared(std::span<const double> a, std::span<const double> b) const;

  std::vector<double> values_;
  std::vector<int> labels_;
  std::vector<char> nominal_;
  std::vector<double> ranges_;
};

}  // namespace dsimb
