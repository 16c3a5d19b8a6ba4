#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "dsimb/metrics.hpp"
#include "oracles.hpp"

using namespace dsimb;
using namespace dsimb::oracle;

namespace {

ConfusionMatrix from_rows(std::size_t c, const std::vector<std::size_t>& cells) {
  ConfusionMatrix cm(c);
  for (std::size_t t = 0; t < c; ++t)
    for (std::size_t p = 0; p < c; ++p) cm(t, p) = cells[t * c + p];
  return cm;
}

ScoredPredictions random_scores(std::mt19937& gen, std::size_t n, std::size_t c, bool coarse) {
  ScoredPredictions sp;
  sp.num_classes = c;
  std::uniform_real_distribution<double> u(0, 1);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> s(c);
    // coarse scores create many ties
    for (auto& v : s) v = coarse ? std::floor(u(gen) * 4) + 0.1 : u(gen);
    const double total = std::accumulate(s.begin(), s.end(), 0.0);
    for (auto& v : s) v /= total;
    const int y = static_cast<int>(i < c ? i : gen() % c);
    sp.add(y, static_cast<int>(std::max_element(s.begin(), s.end()) - s.begin()), s);
  }
  return sp;
}

}  // namespace

TEST_CASE("confusion matrix") {
  const std::vector<int> t{0, 1, 1, 2}, p{0, 1, 2, 2};
  const ConfusionMatrix cm(3, t, p);
  CHECK(cm.total() == 4);
  CHECK(cm(1, 2) == 1);
  CHECK(cm.row_total(1) == 2);
  CHECK(cm.column_total(2) == 2);
}

TEST_CASE("f-measure") {
  CHECK(std::abs(f_measure(from_rows(2, {5, 0, 5, 0})) - 1.0 / 3.0) < 1e-12);
  CHECK(f_measure(from_rows(2, {4, 0, 0, 6})) == 1.0);
  // class 2 has no true instances and is left out of the average
  CHECK(f_measure(from_rows(3, {4, 0, 0, 0, 6, 0, 0, 0, 0})) == 1.0);
}

TEST_CASE("g-mean") {
  CHECK(g_mean(from_rows(2, {5, 0, 5, 0})) == 0.0);
  CHECK(g_mean(from_rows(2, {4, 0, 3, 1})) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(g_mean(from_rows(2, {4, 0, 0, 6})) == 1.0);
  CHECK(g_mean(from_rows(3, {4, 0, 0, 0, 6, 0, 0, 0, 0})) == 1.0);
}

TEST_CASE("metrics are invariant under class relabelling") {
  std::mt19937 gen(1);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t c = 2 + gen() % 4;
    std::vector<std::size_t> cells(c * c);
    for (auto& v : cells) v = gen() % 6;
    const auto cm = from_rows(c, cells);
    std::vector<std::size_t> perm(c);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::shuffle(perm.begin(), perm.end(), gen);
    ConfusionMatrix pm(c);
    for (std::size_t t = 0; t < c; ++t)
      for (std::size_t p = 0; p < c; ++p) pm(perm[t], perm[p]) = cm(t, p);
    CHECK(f_measure(pm) == doctest::Approx(f_measure(cm)).epsilon(1e-12));
    CHECK(g_mean(pm) == doctest::Approx(g_mean(cm)).epsilon(1e-12));
    CHECK(f_measure(cm) >= 0.0);
    CHECK(f_measure(cm) <= 1.0);
    CHECK(g_mean(cm) >= 0.0);
    CHECK(g_mean(cm) <= 1.0);
  }
}

TEST_CASE("auc fixtures") {
  ScoredPredictions sp;
  sp.num_classes = 3;
  const std::vector<std::vector<double>> s{{0.8, 0.1, 0.1}, {0.1, 0.8, 0.1}, {0.1, 0.1, 0.8}};
  for (int i = 0; i < 9; ++i) sp.add(i % 3, i % 3, s[static_cast<std::size_t>(i % 3)]);
  CHECK(auc_multiclass(sp) == 1.0);

  ScoredPredictions flat;
  flat.num_classes = 3;
  const std::vector<double> same{0.2, 0.3, 0.5};
  for (int i = 0; i < 9; ++i) flat.add(i % 3, 2, same);
  CHECK(auc_multiclass(flat) == 0.5);

  ScoredPredictions one;
  one.num_classes = 2;
  const std::vector<double> s0{0.6, 0.4};
  one.add(0, 0, s0);
  CHECK_THROWS_AS(auc_multiclass(one), std::invalid_argument);
}

TEST_CASE("hand-till equals pair counting") {
  std::mt19937 gen(2);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t c = 2 + gen() % 5, n = c + gen() % (200 - c + 1);
    const auto sp = random_scores(gen, n, c, trial % 2 == 1);
    CHECK(std::abs(auc_multiclass(sp) - brute_hand_till(sp)) <= 1e-9);
  }
}

TEST_CASE("binary auc is the standard auc of the positive score") {
  std::mt19937 gen(3);
  for (int trial = 0; trial < 30; ++trial) {
    const auto sp = random_scores(gen, 10 + gen() % 100, 2, trial % 3 == 0);
    double wins = 0, pairs = 0;
    for (std::size_t a = 0; a < sp.size(); ++a)
      for (std::size_t b = 0; b < sp.size(); ++b)
        if (sp.truth[a] == 1 && sp.truth[b] == 0) {
          pairs += 1;
          wins += sp.score(a, 1) > sp.score(b, 1) ? 1.0 : sp.score(a, 1) == sp.score(b, 1) ? 0.5 : 0.0;
        }
    CHECK(auc_multiclass(sp) == doctest::Approx(wins / pairs).epsilon(1e-12));
  }
}

TEST_CASE("auc is invariant under increasing transforms of a score column") {
  std::mt19937 gen(4);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t c = 2 + gen() % 4;
    auto sp = random_scores(gen, 80, c, false);
    const double before = auc_multiclass(sp);
    const std::size_t col = gen() % c;
    for (std::size_t i = 0; i < sp.size(); ++i) {
      double& v = sp.scores[i * c + col];
      v = std::exp(3 * v) + 7;
    }
    CHECK(auc_multiclass(sp) == doctest::Approx(before).epsilon(1e-12));
    CHECK(before >= 0.0);
    CHECK(before <= 1.0);
  }
}
