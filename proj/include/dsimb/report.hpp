#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "dsimb/evaluation.hpp"
#include "dsimb/stats.hpp"

namespace dsimb {

/// Orders used by the tables: plans in the default column order (unknown
/// names after, by first appearance), combiners KNE, KNU, LCA, RANK, STATIC.
std::vector<std::string> plan_order(const std::vector<FoldRecord>& records);
std::vector<std::string> combiner_order(const std::vector<FoldRecord>& records);

/// Column header for a plan label: "Ba" -> "Bagging", "Ba-SM100" -> "SM100".
std::string column_label(const std::string& plan);
/// Method label in the cross-combiner table: the plan for the static vote,
/// otherwise plan + "+" + upper-case combiner.
std::string method_label(const std::string& plan, const std::string& combiner);

/// Mean metric over folds for every (dataset, method) where the methods are
/// (plan, combiner) pairs. Datasets missing any cell are dropped.
ResultsMatrix cell_means(const std::vector<FoldRecord>& records, Metric metric,
                         const std::vector<std::pair<std::string, std::string>>& methods);

struct RankRow {
  std::string combiner;
  std::vector<double> ranks;  // per plan
  FinnerResult finner;
  std::size_t n_datasets = 0;
};

/// Ranks are computed within each combiner row across the plans.
struct RankTable {
  Metric metric = Metric::auc;
  std::vector<std::string> plans;
  std::vector<RankRow> rows;
};

RankTable rank_table(const std::vector<FoldRecord>& records, Metric metric, double alpha = 0.05);

/// Best plan of every combiner row, re-ranked against each other.
struct BestTable {
  Metric metric = Metric::auc;
  std::vector<std::string> methods;  // ascending rank
  std::vector<double> ranks;
  std::vector<char> best;
  std::vector<char> equivalent;
  std::vector<double> p_adjusted;
  std::size_t n_datasets = 0;
};

BestTable best_table(const std::vector<FoldRecord>& records, Metric metric, double alpha = 0.05);

void write_rank_csv(std::ostream& out, const RankTable& t);
void write_rank_markdown(std::ostream& out, const RankTable& t);
void write_best_csv(std::ostream& out, const std::vector<BestTable>& tables);
void write_best_markdown(std::ostream& out, const std::vector<BestTable>& tables);

struct SignTestLine {
  double alpha = 0.0;
  SignTestResult result;
};

struct SignTestReport {
  std::string combiner;
  std::string baseline;
  std::string challenger;
  Metric metric = Metric::auc;
  std::size_t wins = 0, ties = 0, losses = 0;
  std::vector<SignTestLine> lines;  // alpha 0.1, 0.05, 0.01
};

/// Challenger vs baseline on the per-dataset fold means; differences within
/// 1e-12 are ties. Throws std::invalid_argument when a plan is absent.
SignTestReport sign_test_report(const std::vector<FoldRecord>& records, const std::string& combiner,
                                const std::string& baseline, const std::string& challenger, Metric metric,
                                SignTestMethod method = SignTestMethod::exact);

void write_sign_test(std::ostream& out, const SignTestReport& r);

}  // namespace dsimb
