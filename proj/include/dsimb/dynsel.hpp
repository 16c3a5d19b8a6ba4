#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "dsimb/pool.hpp"

namespace dsimb {

enum class Combiner { static_vote, rank, lca, kne, knu };

/// Config names: static, rank, lca, kne, knu.
const char* to_string(Combiner c);
/// Report labels: STATIC, RANK, LCA, KNE, KNU.
const char* display_name(Combiner c);
Combiner parse_combiner(const std::string& s);
std::vector<Combiner> all_combiners();

/// filtered: count consecutive correct neighbours among those whose true label
/// is the tree's query prediction. unfiltered: over the whole neighbour list.
enum class RankMode { filtered, unfiltered };

/// Neighbours of a query in the selection set, with the cached predictions
/// of every tree on them.
struct CompetenceRegion {
  std::vector<std::size_t> neighbors;  // nearest first
  std::vector<int> labels;             // true label per neighbour
  std::size_t num_trees = 0;
  std::vector<int> predictions;        // [tree][neighbour]
  std::vector<int> query_predictions;  // per tree, on the query itself
  std::size_t num_classes = 0;
  bool shortfall = false;

  std::size_t k() const { return neighbors.size(); }
  int prediction(std::size_t tree, std::size_t j) const { return predictions[tree * neighbors.size() + j]; }
  bool correct(std::size_t tree, std::size_t j) const { return prediction(tree, j) == labels[j]; }
};

CompetenceRegion region(const EnsembleModel& m, std::span<const double> x, std::size_t k);

/// Per-tree competence scores.
std::vector<std::size_t> rank_scores(const CompetenceRegion& r, RankMode mode = RankMode::filtered);
std::vector<double> lca_scores(const CompetenceRegion& r);
std::vector<std::size_t> knu_weights(const CompetenceRegion& r);

struct EnsembleChoice {
  std::vector<std::size_t> trees;
  std::size_t depth = 0;   // neighbours every chosen tree got right; 0 after the fallback
  bool fallback = false;   // no tree was correct on the nearest neighbour
};

/// Trees correct on all of the k' nearest neighbours for the largest k' that
/// leaves a non-empty set; otherwise the trees with the most correct
/// neighbours.
EnsembleChoice kne_choice(const CompetenceRegion& r);

/// Index of the highest score, ties to the lowest index; -1 when all are 0.
int best_tree(std::span<const double> scores);

/// Class votes of the selected trees (KNE) or the weighted votes (KNU).
std::vector<double> kne_votes(const CompetenceRegion& r);
std::vector<double> knu_votes(const CompetenceRegion& r);

/// Full decisions on query x. DCS methods return the winner's Laplace leaf
/// probabilities; DES methods return normalized votes. Degenerate regions fall
/// back to the static vote with fallback = true.
Prediction rank_select(const EnsembleModel& m, std::span<const double> x, const CompetenceRegion& r,
                       RankMode mode = RankMode::filtered);
Prediction lca_select(const EnsembleModel& m, std::span<const double> x, const CompetenceRegion& r);
Prediction knora_eliminate(const EnsembleModel& m, std::span<const double> x, const CompetenceRegion& r);
Prediction knora_union(const EnsembleModel& m, std::span<const double> x, const CompetenceRegion& r);

Prediction combine(const EnsembleModel& m, std::span<const double> x, const CompetenceRegion& r, Combiner c,
                   RankMode mode = RankMode::filtered);

}  // namespace dsimb
