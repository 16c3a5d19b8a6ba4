#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace dsimb {

/// Rows are true classes, columns predicted classes.
class ConfusionMatrix {
 public:
  explicit ConfusionMatrix(std::size_t num_classes) : c_(num_classes), cells_(num_classes * num_classes, 0) {}
  ConfusionMatrix(std::size_t num_classes, std::span<const int> truth, std::span<const int> predicted);

  std::size_t num_classes() const { return c_; }
  std::size_t operator()(std::size_t truth, std::size_t predicted) const { return cells_[truth * c_ + predicted]; }
  std::size_t& operator()(std::size_t truth, std::size_t predicted) { return cells_[truth * c_ + predicted]; }
  void add(int truth, int predicted) { ++cells_[static_cast<std::size_t>(truth) * c_ + static_cast<std::size_t>(predicted)]; }
  std::size_t total() const;
  std::size_t row_total(std::size_t truth) const;
  std::size_t column_total(std::size_t predicted) const;

 private:
  std::size_t c_;
  std::vector<std::size_t> cells_;
};

/// Macro F1 over classes with at least one true instance.
double f_measure(const ConfusionMatrix& cm);

/// Geometric mean of recalls over classes with at least one true instance.
double g_mean(const ConfusionMatrix& cm);

struct ScoredPredictions {
  std::size_t num_classes = 0;
  std::vector<int> truth;
  std::vector<int> predicted;
  std::vector<double> scores;  // [instance][class]

  std::size_t size() const { return truth.size(); }
  void add(int y, int yhat, std::span<const double> s);
  double score(std::size_t i, std::size_t c) const { return scores[i * num_classes + c]; }
};

/// P(score_i of a class-i instance > score_i of a class-j instance), ties
/// counting one half, from midranks.
double pairwise_auc(const ScoredPredictions& sp, std::size_t i, std::size_t j);

/// Hand-Till M: mean of (A(i|j) + A(j|i)) / 2 over pairs of present classes.
/// Throws std::invalid_argument with fewer than two present classes.
double auc_multiclass(const ScoredPredictions& sp);

}  // namespace dsimb
