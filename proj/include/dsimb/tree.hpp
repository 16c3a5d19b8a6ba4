#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "dsimb/dataset.hpp"

namespace dsimb {

/// Candidate split of one attribute at one node, as scored during induction.
struct SplitCandidate {
  std::size_t attribute = 0;
  bool nominal = false;
  double threshold = 0.0;  // numeric: x <= threshold goes left
  double gain = 0.0;       // information gain in bits
  double gain_ratio = 0.0;
};

/// Best split for every attribute usable at a node whose instances are given
/// by `rows` (nominal attributes listed in `used` are skipped). Numeric
/// attributes contribute the midpoint threshold with the largest gain, ties
/// to the smallest threshold. Attributes that cannot split are omitted.
std::vector<SplitCandidate> candidate_splits(const Dataset& d, std::span<const std::size_t> rows,
                                             const std::vector<char>& used);

/// Among the candidates with positive gain and gain >= the mean gain of all
/// candidates, the one with the highest gain ratio (ties to the lowest
/// attribute). When no candidate has positive gain, the first candidate if
/// split_without_gain is set, else -1. Also -1 for an empty list.
int choose_split(const std::vector<SplitCandidate>& cands, bool split_without_gain = true);

struct TreeOptions {
  /// Keep splitting impure nodes whose candidates all have zero gain (XOR-like
  /// patterns), so consistent training data is always fit exactly.
  bool split_without_gain = true;
};

/// Unpruned C4.5-style tree with Laplace-smoothed leaves.
class TrainedTree {
 public:
  struct Node {
    int attribute = -1;  // -1 for leaves
    double threshold = 0.0;
    std::uint32_t first_child = 0;
    std::uint32_t num_children = 0;
    std::uint32_t default_child = 0;  // nominal: branch for categories outside the schema
    std::uint32_t total = 0;
    friend bool operator==(const Node&, const Node&) = default;
  };

  TrainedTree() = default;

  /// Deterministic in (train, seed); the induction itself uses no randomness.
  /// Throws DataError on an empty training set.
  static TrainedTree fit(const Dataset& train, std::uint64_t seed = 0, TreeOptions options = {});

  std::size_t num_classes() const { return num_classes_; }
  std::size_t num_attributes() const { return nominal_.size(); }
  const std::vector<Node>& nodes() const { return nodes_; }
  std::span<const std::uint32_t> counts(std::size_t node) const {
    return {counts_.data() + node * num_classes_, num_classes_};
  }
  std::size_t depth() const;
  std::size_t num_leaves() const;

  /// Index of the leaf reached by x. Throws std::invalid_argument on width mismatch.
  std::size_t leaf(std::span<const double> x) const;
  std::vector<double> predict_proba(std::span<const double> x) const;
  int predict(std::span<const double> x) const;

  /// Laplace estimate (count + 1) / (n + C) of one node.
  std::vector<double> leaf_proba(std::size_t node) const;

  void write(std::ostream& out) const;
  static TrainedTree read(std::istream& in);
  std::string to_string() const;
  static TrainedTree from_string(const std::string& s);

  friend bool operator==(const TrainedTree&, const TrainedTree&) = default;

 private:
  std::size_t num_classes_ = 0;
  std::vector<char> nominal_;
  std::vector<Node> nodes_;
  std::vector<std::uint32_t> counts_;

  friend class TreeBuilder;
};

}  // namespace dsimb
