#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "dsimb/dataset.hpp"
#include "dsimb/dynsel.hpp"
#include "dsimb/preprocess.hpp"

namespace dsimb {

struct ExperimentConfig {
  std::vector<std::filesystem::path> datasets;
  std::vector<NamedPlan> plans = default_plans();
  std::vector<Combiner> combiners = all_combiners();
  std::size_t pool_size = 100;
  std::size_t k = 7;
  std::uint64_t seed = 1;
  std::filesystem::path output_dir = "results";
  RankMode rank_mode = RankMode::filtered;
  bool record_timings = false;  // off keeps record files byte-identical across runs

  /// Throws std::invalid_argument naming the offending field.
  void validate() const;
};

struct FoldRecord {
  std::string dataset;
  std::size_t repetition = 0;  // 1-based
  std::size_t fold = 0;        // 1-based
  std::string plan;
  std::string combiner;
  double auc = 0.0;
  double fmeasure = 0.0;
  double gmean = 0.0;
  double train_ms = 0.0;
  double test_ms = 0.0;

  friend bool operator==(const FoldRecord&, const FoldRecord&) = default;
};

struct DatasetFailure {
  std::string dataset;
  std::string message;
};

struct RunResult {
  std::vector<FoldRecord> records;
  std::vector<DatasetFailure> failures;
  std::vector<std::string> warnings;
};

/// 5x2 cross-validation of every (plan, combiner) pair on one dataset.
/// Records are ordered by repetition, fold, plan, combiner. Folds and plans
/// run in parallel; every seed is derived from (cfg.seed, dataset name,
/// repetition, fold, plan name, member).
std::vector<FoldRecord> evaluate_dataset(const Dataset& d, const ExperimentConfig& cfg,
                                         std::vector<std::string>* warnings = nullptr);

/// Loads and evaluates every configured dataset, isolating failures per dataset.
RunResult run_experiment(const ExperimentConfig& cfg, std::ostream* log = nullptr);

enum class Metric { auc, fmeasure, gmean };
const char* to_string(Metric m);
Metric parse_metric(const std::string& s);
double metric_value(const FoldRecord& r, Metric m);

void write_records(std::ostream& out, const std::vector<FoldRecord>& records);
/// Throws ParseError on malformed input.
std::vector<FoldRecord> read_records(std::istream& in);

}  // namespace dsimb
