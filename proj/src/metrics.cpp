#include "dsimb/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace dsimb {

ConfusionMatrix::ConfusionMatrix(std::size_t num_classes, std::span<const int> truth, std::span<const int> predicted)
    : ConfusionMatrix(num_classes) {
  if (truth.size() != predicted.size()) throw std::invalid_argument("truth and predictions differ in length");
  for (std::size_t i = 0; i < truth.size(); ++i) add(truth[i], predicted[i]);
}

std::size_t ConfusionMatrix::total() const { return std::accumulate(cells_.begin(), cells_.end(), std::size_t{0}); }

std::size_t ConfusionMatrix::row_total(std::size_t truth) const {
  std::size_t s = 0;
  for (std::size_t p = 0; p < c_; ++p) s += (*this)(truth, p);
  return s;
}

std::size_t ConfusionMatrix::column_total(std::size_t predicted) const {
  std::size_t s = 0;
  for (std::size_t t = 0; t < c_; ++t) s += (*this)(t, predicted);
  return s;
}

double f_measure(const ConfusionMatrix& cm) {
  double sum = 0.0;
  std::size_t used = 0;
  for (std::size_t c = 0; c < cm.num_classes(); ++c) {
    const std::size_t actual = cm.row_total(c);
    if (actual == 0) continue;
    const std::size_t tp = cm(c, c), predicted = cm.column_total(c);
    const double precision = predicted ? static_cast<double>(tp) / static_cast<double>(predicted) : 0.0;
    const double recall = static_cast<double>(tp) / static_cast<double>(actual);
    sum += precision + recall > 0.0 ? 2.0 * precision * recall / (precision + recall) : 0.0;
    ++used;
  }
  return used ? sum / static_cast<double>(used) : 0.0;
}

double g_mean(const ConfusionMatrix& cm) {
  double product = 1.0;
  std::size_t used = 0;
  for (std::size_t c = 0; c < cm.num_classes(); ++c) {
    const std::size_t actual = cm.row_total(c);
    if (actual == 0) continue;
    if (cm(c, c) == 0) return 0.0;
    product *= static_cast<double>(cm(c, c)) / static_cast<double>(actual);
    ++used;
  }
  return used ? std::pow(product, 1.0 / static_cast<double>(used)) : 0.0;
}

void ScoredPredictions::add(int y, int yhat, std::span<const double> s) {
  if (s.size() != num_classes) throw std::invalid_argument("score vector has the wrong length");
  truth.push_back(y);
  predicted.push_back(yhat);
  scores.insert(scores.end(), s.begin(), s.end());
}

double pairwise_auc(const ScoredPredictions& sp, std::size_t i, std::size_t j) {
  std::vector<std::pair<double, bool>> v;  // (score for class i, is class i)
  for (std::size_t n = 0; n < sp.size(); ++n) {
    const auto y = static_cast<std::size_t>(sp.truth[n]);
    if (y == i || y == j) v.emplace_back(sp.score(n, i), y == i);
  }
  std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  double rank_sum = 0.0;
  std::size_t ni = 0;
  for (std::size_t a = 0; a < v.size();) {
    std::size_t b = a;
    while (b < v.size() && v[b].first == v[a].first) ++b;
    const double mid = (static_cast<double>(a + 1) + static_cast<double>(b)) / 2.0;
    for (std::size_t t = a; t < b; ++t) {
      if (v[t].second) {
        rank_sum += mid;
        ++ni;
      }
    }
    a = b;
  }
  const std::size_t nj = v.size() - ni;
  if (ni == 0 || nj == 0) throw std::invalid_argument("pairwise AUC needs both classes present");
  const double di = static_cast<double>(ni), dj = static_cast<double>(nj);
  return (rank_sum - di * (di + 1.0) / 2.0) / (di * dj);
}

double auc_multiclass(const ScoredPredictions& sp) {
  std::vector<std::size_t> counts(sp.num_classes, 0);
  for (int y : sp.truth) ++counts[static_cast<std::size_t>(y)];
  double sum = 0.0;
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < sp.num_classes; ++i) {
    if (!counts[i]) continue;
    for (std::size_t j = i + 1; j < sp.num_classes; ++j) {
      if (!counts[j]) continue;
      sum += (pairwise_auc(sp, i, j) + pairwise_auc(sp, j, i)) / 2.0;
      ++pairs;
    }
  }
  if (pairs == 0) throw std::invalid_argument("multi-class AUC needs at least two present classes");
  return sum / static_cast<double>(pairs);
}

}  // namespace dsimb
