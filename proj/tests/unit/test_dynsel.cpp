#include <doctest.h>

#include <algorithm>
#include <random>

#include "dsimb/dynsel.hpp"
#include "oracles.hpp"

using namespace dsimb;
using namespace dsimb::oracle;

TEST_CASE("names") {
  for (Combiner c : all_combiners()) {
    CHECK(parse_combiner(to_string(c)) == c);
    CHECK(parse_combiner(display_name(c)) == c);
  }
  CHECK_THROWS_AS(parse_combiner("ola"), std::invalid_argument);
}

TEST_CASE("worked region") {
  // 3 trees, 4 neighbours labelled 0 1 0 1
  const auto r = make_region(3, {0, 1, 0, 1},
                             {0, 1, 1, 1,    // tree 0: correct, correct, wrong, correct
                              0, 1, 0, 0,    // tree 1: correct x3, wrong
                              1, 1, 0, 1},   // tree 2: wrong, correct x3
                             {0, 1, 1}, 2);
  CHECK(knu_weights(r) == std::vector<std::size_t>{3, 3, 3});
  const auto kne = kne_choice(r);
  CHECK(kne.trees == std::vector<std::size_t>{1});
  CHECK(kne.depth == 3);
  CHECK_FALSE(kne.fallback);
  // filtered ranks: tree 0 predicts 0 -> neighbours 0, 2 -> right then wrong
  CHECK(rank_scores(r, RankMode::filtered) == std::vector<std::size_t>{1, 1, 2});
  CHECK(rank_scores(r, RankMode::unfiltered) == std::vector<std::size_t>{2, 3, 0});
  const auto lca = lca_scores(r);
  CHECK(lca[0] == doctest::Approx(1.0));
  CHECK(lca[1] == doctest::Approx(1.0));
  CHECK(lca[2] == doctest::Approx(2.0 / 3.0));
  CHECK(knu_votes(r) == std::vector<double>{3, 6});
  CHECK(kne_votes(r) == std::vector<double>{0, 1});
}

TEST_CASE("kne falls back to the most accurate trees") {
  const auto r = make_region(3, {0, 0, 0}, {1, 0, 0, 1, 1, 0, 1, 0, 1}, {0, 1, 1}, 2);
  const auto c = kne_choice(r);
  CHECK(c.fallback);
  CHECK(c.trees == std::vector<std::size_t>{0});
  const auto none = make_region(2, {0, 0}, {1, 1, 1, 1}, {0, 1}, 2);
  CHECK(kne_choice(none).trees == std::vector<std::size_t>{0, 1});
}

TEST_CASE("best tree") {
  CHECK(best_tree(std::vector<double>{0, 0, 0}) == -1);
  CHECK(best_tree(std::vector<double>{0, 2, 2}) == 1);
  CHECK(best_tree(std::vector<double>{0.5, 0.25}) == 0);
}

TEST_CASE("exhaustive comparison with brute-force oracles") {
  // every binary matrix with up to 3 trees and 4 neighbours
  for (std::size_t trees = 1; trees <= 3; ++trees) {
    for (std::size_t k = 1; k <= 4; ++k) {
      const std::size_t cells = trees * k;
      for (std::uint32_t lab = 0; lab < (1u << k); ++lab) {
        for (std::uint32_t q = 0; q < (1u << trees); ++q) {
          for (std::uint32_t pm = 0; pm < (1u << cells); ++pm) {
            std::vector<int> labels(k), preds(cells), query(trees);
            for (std::size_t j = 0; j < k; ++j) labels[j] = (lab >> j) & 1;
            for (std::size_t i = 0; i < cells; ++i) preds[i] = (pm >> i) & 1;
            for (std::size_t t = 0; t < trees; ++t) query[t] = (q >> t) & 1;
            const auto r = make_region(trees, labels, preds, query, 2);
            const auto rf = rank_scores(r, RankMode::filtered);
            const auto ru = rank_scores(r, RankMode::unfiltered);
            const auto lca = lca_scores(r);
            const auto knu = knu_weights(r);
            for (std::size_t t = 0; t < trees; ++t) {
              REQUIRE(rf[t] == oracle_rank(r, t, true));
              REQUIRE(ru[t] == oracle_rank(r, t, false));
              REQUIRE(lca[t] == oracle_lca(r, t));
              REQUIRE(knu[t] == oracle_knu(r, t));
            }
            REQUIRE(kne_choice(r).trees == oracle_kne(r));
          }
        }
      }
    }
  }
}

TEST_CASE("kne depth never grows when a neighbour is appended") {
  std::mt19937 gen(3);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t trees = 1 + gen() % 8, k = 1 + gen() % 9, classes = 2 + gen() % 3;
    std::vector<int> labels(k + 1), preds;
    for (auto& l : labels) l = static_cast<int>(gen() % classes);
    std::vector<int> full(trees * (k + 1));
    for (auto& p : full) p = static_cast<int>(gen() % classes);
    std::vector<int> query(trees);
    for (auto& p : query) p = static_cast<int>(gen() % classes);
    for (std::size_t t = 0; t < trees; ++t)
      for (std::size_t j = 0; j < k; ++j) preds.push_back(full[t * (k + 1) + j]);
    const auto small = make_region(trees, std::vector<int>(labels.begin(), labels.begin() + static_cast<long>(k)),
                                   preds, query, classes);
    const auto big = make_region(trees, labels, full, query, classes);
    const auto a = kne_choice(small), b = kne_choice(big);
    if (!a.fallback) {
      CHECK_FALSE(b.fallback);
      CHECK(b.depth >= a.depth);
      // every tree chosen at the larger depth is also chosen with fewer neighbours
      if (b.depth > a.depth) {
        for (std::size_t t : b.trees) CHECK(std::find(a.trees.begin(), a.trees.end(), t) != a.trees.end());
      }
    }
    CHECK(!b.trees.empty());
  }
}

TEST_CASE("selectors on a trained pool") {
  Dataset d("s", {{"x", AttributeKind::numeric, {}, 0, 0}}, {"a", "b"});
  std::mt19937 gen(5);
  std::normal_distribution<double> g(0, 1);
  for (int i = 0; i < 60; ++i) {
    const double x = g(gen) + (i % 3 == 0 ? 2.0 : 0.0);
    d.add(std::span<const double>(&x, 1), i % 3 == 0 ? 1 : 0);
  }
  d.refresh_ranges();

  const auto one = EnsembleModel::train(d, ResamplePlan{}, 1, 4);
  for (std::size_t i = 0; i < d.size(); i += 7) {
    const auto r = region(one, d.row(i), 7);
    CHECK(r.k() == 7);
    const int static_label = one.static_predict(d.row(i)).label;
    for (Combiner c : all_combiners()) {
      const auto p = combine(one, d.row(i), r, c);
      CHECK(p.label == static_label);
    }
  }

  const auto m = EnsembleModel::train(d, ResamplePlan{}, 10, 4);
  for (std::size_t i = 0; i < d.size(); i += 5) {
    const auto r = region(m, d.row(i), 7);
    for (Combiner c : all_combiners()) {
      const auto p = combine(m, d.row(i), r, c);
      double sum = 0;
      for (double s : p.scores) sum += s;
      CHECK(sum == doctest::Approx(1.0));
      CHECK(p.label >= 0);
      CHECK(p.label < 2);
    }
    const auto rk = rank_select(m, d.row(i), r);
    if (!rk.fallback) {
      const auto s = rank_scores(r);
      const std::vector<double> sd(s.begin(), s.end());
      CHECK(rk.label == m.trees()[static_cast<std::size_t>(best_tree(sd))].predict(d.row(i)));
    }
  }
}
