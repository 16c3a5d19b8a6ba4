#include "dsimb/dynsel.hpp"

#include <algorithm>
#include <stdexcept>

namespace dsimb {

namespace {

Prediction normalized(std::vector<double> votes) {
  Prediction p;
  double total = 0.0;
  std::size_t best = 0;
  for (std::size_t c = 0; c < votes.size(); ++c) {
    total += votes[c];
    if (votes[c] > votes[best]) best = c;
  }
  p.label = static_cast<int>(best);
  if (total > 0)
    for (auto& v : votes) v /= total;
  p.scores = std::move(votes);
  return p;
}

Prediction fallback(const CompetenceRegion& r) {
  Prediction p = vote(r.query_predictions, r.num_classes);
  p.fallback = true;
  return p;
}

Prediction single(const EnsembleModel& m, std::span<const double> x, std::size_t tree) {
  Prediction p;
  const auto& t = m.trees()[tree];
  p.label = t.predict(x);
  p.scores = t.predict_proba(x);
  return p;
}

}  // namespace

const char* to_string(Combiner c) {
  switch (c) {
    case Combiner::static_vote: return "static";
    case Combiner::rank: return "rank";
    case Combiner::lca: return "lca";
    case Combiner::kne: return "kne";
    case Combiner::knu: return "knu";
  }
  return "?";
}

const char* display_name(Combiner c) {
  switch (c) {
    case Combiner::static_vote: return "STATIC";
    case Combiner::rank: return "RANK";
    case Combiner::lca: return "LCA";
    case Combiner::kne: return "KNE";
    case Combiner::knu: return "KNU";
  }
  return "?";
}

Combiner parse_combiner(const std::string& s) {
  for (Combiner c : all_combiners()) {
    if (s == to_string(c) || s == display_name(c)) return c;
  }
  throw std::invalid_argument("unknown combiner '" + s + "'");
}

std::vector<Combiner> all_combiners() {
  return {Combiner::static_vote, Combiner::rank, Combiner::lca, Combiner::kne, Combiner::knu};
}

CompetenceRegion region(const EnsembleModel& m, std::span<const double> x, std::size_t k) {
  const auto nn = m.dsel_index().knn(x, k);
  CompetenceRegion r;
  r.neighbors = nn.indices;
  r.shortfall = nn.shortfall;
  r.num_trees = m.size();
  r.num_classes = m.num_classes();
  for (std::size_t j : r.neighbors) r.labels.push_back(m.dsel().label(j));
  r.predictions.resize(r.num_trees * r.k());
  for (std::size_t t = 0; t < r.num_trees; ++t)
    for (std::size_t j = 0; j < r.k(); ++j) r.predictions[t * r.k() + j] = m.dsel_prediction(t, r.neighbors[j]);
  r.query_predictions = m.query_predictions(x);
  return r;
}

std::vector<std::size_t> rank_scores(const CompetenceRegion& r, RankMode mode) {
  std::vector<std::size_t> out(r.num_trees, 0);
  for (std::size_t t = 0; t < r.num_trees; ++t) {
    const int ci = r.query_predictions[t];
    std::size_t run = 0;
    for (std::size_t j = 0; j < r.k(); ++j) {
      if (mode == RankMode::filtered && r.labels[j] != ci) continue;
      if (!r.correct(t, j)) break;
      ++run;
    }
    out[t] = run;
  }
  return out;
}

std::vector<double> lca_scores(const CompetenceRegion& r) {
  std::vector<double> out(r.num_trees, 0.0);
  for (std::size_t t = 0; t < r.num_trees; ++t) {
    const int ci = r.query_predictions[t];
    std::size_t den = 0, num = 0;
    for (std::size_t j = 0; j < r.k(); ++j) {
      if (r.prediction(t, j) != ci) continue;
      ++den;
      num += r.labels[j] == ci;
    }
    out[t] = den ? static_cast<double>(num) / static_cast<double>(den) : 0.0;
  }
  return out;
}

std::vector<std::size_t> knu_weights(const CompetenceRegion& r) {
  std::vector<std::size_t> w(r.num_trees, 0);
  for (std::size_t t = 0; t < r.num_trees; ++t)
    for (std::size_t j = 0; j < r.k(); ++j) w[t] += r.correct(t, j);
  return w;
}

EnsembleChoice kne_choice(const CompetenceRegion& r) {
  // prefix[t] = number of leading neighbours tree t classifies correctly
  std::vector<std::size_t> prefix(r.num_trees, 0);
  for (std::size_t t = 0; t < r.num_trees; ++t) {
    while (prefix[t] < r.k() && r.correct(t, prefix[t])) ++prefix[t];
  }
  EnsembleChoice c;
  for (std::size_t kk = r.k(); kk >= 1; --kk) {
    for (std::size_t t = 0; t < r.num_trees; ++t)
      if (prefix[t] >= kk) c.trees.push_back(t);
    if (!c.trees.empty()) {
      c.depth = kk;
      return c;
    }
  }
  c.fallback = true;
  const auto w = knu_weights(r);
  const std::size_t top = w.empty() ? 0 : *std::max_element(w.begin(), w.end());
  for (std::size_t t = 0; t < r.num_trees; ++t)
    if (w[t] == top) c.trees.push_back(t);
  return c;
}

int best_tree(std::span<const double> scores) {
  int best = -1;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (scores[i] > 0.0 && (best < 0 || scores[i] > scores[static_cast<std::size_t>(best)])) best = static_cast<int>(i);
  }
  return best;
}

std::vector<double> kne_votes(const CompetenceRegion& r) {
  std::vector<double> votes(r.num_classes, 0.0);
  for (std::size_t t : kne_choice(r).trees) votes[static_cast<std::size_t>(r.query_predictions[t])] += 1.0;
  return votes;
}

std::vector<double> knu_votes(const CompetenceRegion& r) {
  std::vector<double> votes(r.num_classes, 0.0);
  const auto w = knu_weights(r);
  for (std::size_t t = 0; t < r.num_trees; ++t)
    votes[static_cast<std::size_t>(r.query_predictions[t])] += static_cast<double>(w[t]);
  return votes;
}

Prediction rank_select(const EnsembleModel& m, std::span<const double> x, const CompetenceRegion& r, RankMode mode) {
  const auto ranks = rank_scores(r, mode);
  const std::vector<double> s(ranks.begin(), ranks.end());
  const int t = best_tree(s);
  return t < 0 ? fallback(r) : single(m, x, static_cast<std::size_t>(t));
}

Prediction lca_select(const EnsembleModel& m, std::span<const double> x, const CompetenceRegion& r) {
  const int t = best_tree(lca_scores(r));
  return t < 0 ? fallback(r) : single(m, x, static_cast<std::size_t>(t));
}

Prediction knora_eliminate(const EnsembleModel&, std::span<const double>, const CompetenceRegion& r) {
  return normalized(kne_votes(r));
}

Prediction knora_union(const EnsembleModel&, std::span<const double>, const CompetenceRegion& r) {
  auto votes = knu_votes(r);
  if (std::all_of(votes.begin(), votes.end(), [](double v) { return v == 0.0; })) return fallback(r);
  return normalized(std::move(votes));
}

Prediction combine(const EnsembleModel& m, std::span<const double> x, const CompetenceRegion& r, Combiner c,
                   RankMode mode) {
  switch (c) {
    case Combiner::static_vote: return vote(r.query_predictions, r.num_classes);
    case Combiner::rank: return rank_select(m, x, r, mode);
    case Combiner::lca: return lca_select(m, x, r);
    case Combiner::kne: return knora_eliminate(m, x, r);
    case Combiner::knu: return knora_union(m, x, r);
  }
  throw std::invalid_argument("unknown combiner");
}

}  // namespace dsimb
