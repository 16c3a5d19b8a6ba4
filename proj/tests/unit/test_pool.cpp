#include <doctest.h>

#include <filesystem>
#include <random>

#include "dsimb/kernels.hpp"
#include "dsimb/parallel.hpp"
#include "dsimb/pool.hpp"

using namespace dsimb;

namespace {

Dataset blobs(std::size_t n0, std::size_t n1, std::uint32_t seed) {
  Dataset d("b", {{"x", AttributeKind::numeric, {}, 0, 0}, {"y", AttributeKind::numeric, {}, 0, 0}}, {"a", "b"});
  std::mt19937 gen(seed);
  std::normal_distribution<double> g(0, 1);
  for (std::size_t i = 0; i < n0; ++i) {
    const double x[2] = {g(gen), g(gen)};
    d.add(x, 0);
  }
  for (std::size_t i = 0; i < n1; ++i) {
    const double x[2] = {g(gen) + 1.5, g(gen) + 1.0};
    d.add(x, 1);
  }
  d.refresh_ranges();
  return d;
}

}  // namespace

TEST_CASE("vote") {
  const std::vector<int> p{1, 2, 1, 0};
  const auto v = vote(p, 3);
  CHECK(v.label == 1);
  CHECK(v.scores == std::vector<double>{0.25, 0.5, 0.25});
  const std::vector<int> tie{2, 0};
  CHECK(vote(tie, 3).label == 0);
}

TEST_CASE("bootstrap size and retry") {
  const auto d = blobs(30, 11, 1);
  for (std::size_t m = 1; m <= 20; ++m) {
    const auto b = member_bootstrap(d, 5, m);
    CHECK(b.size() == 21);
    for (std::size_t i : b) CHECK(i < d.size());
  }
  // one minority instance in 41: most samples of 21 miss it, so retries matter
  const auto skewed = blobs(40, 1, 2);
  std::size_t ok = 0, failed = 0;
  for (std::size_t m = 1; m <= 50; ++m) {
    try {
      const auto b = member_bootstrap(skewed, 9, m);
      bool both = false;
      for (std::size_t i : b) both |= skewed.label(i) == 1;
      CHECK(both);
      ++ok;
    } catch (const DataError&) {
      ++failed;
    }
  }
  CHECK(ok > 0);
  CHECK(ok + failed == 50);
}

TEST_CASE("pool structure") {
  const auto d = blobs(40, 12, 3);
  ResamplePlan none;
  const auto m = EnsembleModel::train(d, none, 15, 7);
  CHECK(m.size() == 15);
  CHECK(m.dsel() == d);
  CHECK(m.dsel_predictions().size() == 15 * d.size());
  for (std::size_t t = 0; t < m.size(); ++t)
    for (std::size_t j = 0; j < d.size(); ++j) CHECK(m.dsel_prediction(t, j) == m.trees()[t].predict(d.row(j)));

  const auto sm = EnsembleModel::train(d, plan_by_name("Ba-SM"), 5, 7);
  CHECK(class_counts(sm.dsel()) == std::vector<std::size_t>{40, 40});
  CHECK(sm.dsel().size() == 80);
}

TEST_CASE("pool is deterministic and independent of thread count") {
  const auto d = blobs(50, 15, 4);
  const auto plan = plan_by_name("Ba-RM");
  EnsembleModel a, b;
  {
    ScopedThreads one(1);
    a = EnsembleModel::train(d, plan, 12, 99);
  }
  {
    ScopedThreads many(4);
    b = EnsembleModel::train(d, plan, 12, 99);
  }
  CHECK(a.trees() == b.trees());
  CHECK(a.dsel() == b.dsel());
  CHECK(a.dsel_predictions() == b.dsel_predictions());
  const auto c = EnsembleModel::train(d, plan, 12, 100);
  CHECK_FALSE(c.trees() == a.trees());
}

TEST_CASE("prediction matrix kernel matches the serial reference") {
  const auto d = blobs(60, 20, 5);
  const auto m = EnsembleModel::train(d, ResamplePlan{}, 8, 3);
  ScopedThreads many(4);
  CHECK(prediction_matrix(m.trees(), d) == reference::prediction_matrix(m.trees(), d));
}

TEST_CASE("static prediction is the majority vote") {
  const auto d = blobs(40, 20, 6);
  const auto m = EnsembleModel::train(d, ResamplePlan{}, 9, 3);
  for (std::size_t j = 0; j < d.size(); ++j) {
    const auto q = m.query_predictions(d.row(j));
    CHECK(m.static_predict(d.row(j)).label == vote(q, 2).label);
  }
}

TEST_CASE("model save and load") {
  const auto d = blobs(30, 10, 7);
  const auto m = EnsembleModel::train(d, plan_by_name("Ba-SM100"), 6, 11);
  const auto path = std::filesystem::temp_directory_path() / "dsimb_model_test.json";
  m.save(path);
  const auto l = EnsembleModel::load(path);
  std::filesystem::remove(path);
  CHECK(l.trees() == m.trees());
  CHECK(l.dsel() == m.dsel());
  CHECK(l.dsel_predictions() == m.dsel_predictions());
  CHECK(l.plan() == m.plan());
  CHECK(l.master_seed() == m.master_seed());
}
