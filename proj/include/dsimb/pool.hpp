#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "dsimb/dataset.hpp"
#include "dsimb/neighbors.hpp"
#include "dsimb/preprocess.hpp"
#include "dsimb/tree.hpp"

namespace dsimb {

struct Prediction {
  int label = 0;
  std::vector<double> scores;  // sums to 1
  bool fallback = false;       // a dynamic selector fell back to the static vote
};

/// Majority vote over per-tree predictions; scores are vote fractions and
/// ties go to the lowest class.
Prediction vote(std::span<const int> predictions, std::size_t num_classes);

/// Bootstrap positions for one pool member: ceil(n/2) draws with replacement.
/// Retries with the next derived seed while the sample holds a single class;
/// throws DataError after max_retries retries.
std::vector<std::size_t> member_bootstrap(const Dataset& train, std::uint64_t master_seed, std::size_t member,
                                          std::size_t max_retries = 10);

/// Bagged pool of preprocessed trees plus the preprocessed selection set.
class EnsembleModel {
 public:
  EnsembleModel() = default;

  /// Member i (1-based) uses seeds derived from (master_seed, i); the
  /// selection set is apply(train, plan) with a seed derived from
  /// (master_seed, 0). Members are trained in parallel.
  static EnsembleModel train(const Dataset& train, const ResamplePlan& plan, std::size_t pool_size,
                             std::uint64_t master_seed);

  const std::vector<TrainedTree>& trees() const { return trees_; }
  std::size_t size() const { return trees_.size(); }
  std::size_t num_classes() const { return dsel_.num_classes(); }
  const Dataset& dsel() const { return dsel_; }
  const NeighborIndex& dsel_index() const { return index_; }
  /// Row-major [tree][dsel instance].
  const std::vector<int>& dsel_predictions() const { return dsel_predictions_; }
  int dsel_prediction(std::size_t tree, std::size_t j) const { return dsel_predictions_[tree * dsel_.size() + j]; }
  const ResamplePlan& plan() const { return plan_; }
  std::uint64_t master_seed() const { return master_seed_; }

  std::vector<int> query_predictions(std::span<const double> x) const;
  Prediction static_predict(std::span<const double> x) const;

  /// Versioned JSON container with trees, selection set and prediction cache.
  void save(const std::filesystem::path& path) const;
  static EnsembleModel load(const std::filesystem::path& path);

 private:
  std::vector<TrainedTree> trees_;
  Dataset dsel_;
  NeighborIndex index_;
  std::vector<int> dsel_predictions_;
  ResamplePlan plan_;
  std::uint64_t master_seed_ = 0;
};

}  // namespace dsimb
