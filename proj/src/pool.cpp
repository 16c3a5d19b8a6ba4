#include "dsimb/pool.hpp"

#include <exception>
#include <fstream>

#include <json.hpp>

#include "dsimb/kernels.hpp"
#include "dsimb/parallel.hpp"
#include "dsimb/rng.hpp"

namespace dsimb {

namespace {

using nlohmann::json;

json dataset_json(const Dataset& d) {
  json schema = json::array();
  for (const auto& a : d.schema()) {
    schema.push_back({{"name", a.name}, {"nominal", a.is_nominal()}, {"values", a.nominal_values}});
  }
  return {{"name", d.name()},
          {"schema", schema},
          {"classes", d.class_names()},
          {"values", d.values()},
          {"labels", d.labels()}};
}

Dataset dataset_from_json(const json& j) {
  std::vector<AttributeSchema> schema;
  for (const auto& a : j.at("schema")) {
    AttributeSchema s;
    s.name = a.at("name").get<std::string>();
    s.kind = a.at("nominal").get<bool>() ? AttributeKind::nominal : AttributeKind::numeric;
    s.nominal_values = a.at("values").get<std::vector<std::string>>();
    schema.push_back(std::move(s));
  }
  Dataset d(j.at("name").get<std::string>(), std::move(schema), j.at("classes").get<std::vector<std::string>>());
  const auto values = j.at("values").get<std::vector<double>>();
  const auto labels = j.at("labels").get<std::vector<int>>();
  const std::size_t m = d.num_attributes();
  if (values.size() != labels.size() * m) throw std::runtime_error("model selection set is inconsistent");
  d.reserve(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) d.add(std::span<const double>(values.data() + i * m, m), labels[i]);
  d.refresh_ranges();
  return d;
}

json plan_json(const ResamplePlan& p) {
  return {{"method", to_string(p.method)}, {"variant", to_string(p.variant)},
          {"k_smote", p.k_smote},          {"k1", p.k1},
          {"k2", p.k2},                    {"alpha", p.alpha},
          {"seed", p.seed},                {"ramo_delta", p.ramo_delta == RamoDelta::other_classes ? "other" : "majority"}};
}

ResamplePlan plan_from_json(const json& j) {
  ResamplePlan p;
  p.method = parse_method(j.at("method").get<std::string>());
  p.variant = parse_variant(j.at("variant").get<std::string>());
  p.k_smote = j.at("k_smote").get<std::size_t>();
  p.k1 = j.at("k1").get<std::size_t>();
  p.k2 = j.at("k2").get<std::size_t>();
  p.alpha = j.at("alpha").get<double>();
  p.seed = j.at("seed").get<std::uint64_t>();
  p.ramo_delta = j.at("ramo_delta").get<std::string>() == "other" ? RamoDelta::other_classes : RamoDelta::majority_only;
  return p;
}

}  // namespace

Prediction vote(std::span<const int> predictions, std::size_t num_classes) {
  Prediction p;
  p.scores.assign(num_classes, 0.0);
  for (int y : predictions) p.scores[static_cast<std::size_t>(y)] += 1.0;
  std::size_t best = 0;
  for (std::size_t c = 1; c < num_classes; ++c)
    if (p.scores[c] > p.scores[best]) best = c;
  p.label = static_cast<int>(best);
  if (!predictions.empty())
    for (auto& s : p.scores) s /= static_cast<double>(predictions.size());
  return p;
}

std::vector<std::size_t> member_bootstrap(const Dataset& train, std::uint64_t master_seed, std::size_t member,
                                          std::size_t max_retries) {
  const std::size_t n = train.size();
  if (n == 0) throw DataError("empty training set");
  const std::size_t size = (n + 1) / 2;
  for (std::size_t attempt = 0; attempt <= max_retries; ++attempt) {
    Rng rng(attempt == 0 ? derive_seed(master_seed, {member}) : derive_seed(master_seed, {member, attempt}));
    std::vector<std::size_t> rows(size);
    for (auto& r : rows) r = rng.below(n);
    for (std::size_t r : rows) {
      if (train.label(r) != train.label(rows.front())) return rows;
    }
  }
  throw DataError("bootstrap " + std::to_string(member) + " held a single class after " +
                  std::to_string(max_retries) + " retries");
}

EnsembleModel EnsembleModel::train(const Dataset& train, const ResamplePlan& plan, std::size_t pool_size,
                                   std::uint64_t master_seed) {
  if (train.empty()) throw DataError("empty training set");
  if (pool_size == 0) throw std::invalid_argument("pool size must be at least 1");
  plan.validate();

  EnsembleModel m;
  m.plan_ = plan;
  m.master_seed_ = master_seed;
  m.trees_.resize(pool_size);
  std::vector<std::exception_ptr> errors(pool_size);

#pragma omp parallel for schedule(dynamic) num_threads(thread_count())
  for (std::int64_t s = 0; s < static_cast<std::int64_t>(pool_size); ++s) {
    const auto i = static_cast<std::size_t>(s);
    try {
      const auto rows = member_bootstrap(train, master_seed, i + 1);
      ResamplePlan p = plan;
      p.seed = derive_seed(master_seed, {i + 1, 0xb007});
      const Dataset t = apply(train.subset(rows), p);
      m.trees_[i] = TrainedTree::fit(t, derive_seed(master_seed, {i + 1}));
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);

  ResamplePlan p = plan;
  p.seed = derive_seed(master_seed, {0});
  m.dsel_ = apply(train, p);
  m.dsel_.refresh_ranges();
  m.index_ = NeighborIndex(m.dsel_);
  m.dsel_predictions_ = prediction_matrix(m.trees_, m.dsel_);
  return m;
}

std::vector<int> EnsembleModel::query_predictions(std::span<const double> x) const {
  std::vector<int> out(trees_.size());
  for (std::size_t i = 0; i < trees_.size(); ++i) out[i] = trees_[i].predict(x);
  return out;
}

Prediction EnsembleModel::static_predict(std::span<const double> x) const {
  return vote(query_predictions(x), num_classes());
}

void EnsembleModel::save(const std::filesystem::path& path) const {
  json trees = json::array();
  for (const auto& t : trees_) trees.push_back(t.to_string());
  const json j = {{"format", "dsimb-model"},     {"version", 1},           {"plan", plan_json(plan_)},
                  {"master_seed", master_seed_}, {"trees", trees},         {"dsel", dataset_json(dsel_)},
                  {"dsel_predictions", dsel_predictions_}};
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << j.dump() << '\n';
}

EnsembleModel EnsembleModel::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  const json j = json::parse(in);
  if (j.value("format", "") != "dsimb-model" || j.value("version", 0) != 1) {
    throw std::runtime_error("unsupported model container");
  }
  EnsembleModel m;
  m.plan_ = plan_from_json(j.at("plan"));
  m.master_seed_ = j.at("master_seed").get<std::uint64_t>();
  for (const auto& t : j.at("trees")) m.trees_.push_back(TrainedTree::from_string(t.get<std::string>()));
  m.dsel_ = dataset_from_json(j.at("dsel"));
  m.index_ = NeighborIndex(m.dsel_);
  m.dsel_predictions_ = j.at("dsel_predictions").get<std::vector<int>>();
  if (m.dsel_predictions_.size() != m.trees_.size() * m.dsel_.size()) {
    throw std::runtime_error("prediction cache does not match the pool");
  }
  return m;
}

}  // namespace dsimb
