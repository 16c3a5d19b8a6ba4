#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace dsimb {

/// Metric values, rows = datasets, columns = methods; higher is better.
struct ResultsMatrix {
  std::vector<std::string> datasets;
  std::vector<std::string> methods;
  std::vector<double> values;  // row-major

  ResultsMatrix() = default;
  ResultsMatrix(std::vector<std::string> rows, std::vector<std::string> cols)
      : datasets(std::move(rows)), methods(std::move(cols)), values(datasets.size() * methods.size(), 0.0) {}

  double& at(std::size_t d, std::size_t m) { return values[d * methods.size() + m]; }
  double at(std::size_t d, std::size_t m) const { return values[d * methods.size() + m]; }
  std::span<const double> row(std::size_t d) const { return {values.data() + d * methods.size(), methods.size()}; }
  /// Keeps the given columns in the given order.
  ResultsMatrix columns(std::span<const std::size_t> cols) const;
};

/// Ranks within one row: 1 = highest value, ties get the mean position.
std::vector<double> rank_row(std::span<const double> values);
std::vector<double> average_ranks(const ResultsMatrix& rm);

/// Lowest rank, ties to the lowest position.
std::size_t best_index(std::span<const double> ranks);

/// Upper tail of the standard normal distribution.
double normal_upper_tail(double z);

/// 1 - (1 - p_(j))^(k/j) with a running maximum over the ascending order,
/// where k = p_raw.size(). Returned in the input order, capped at 1.
std::vector<double> finner_adjust(std::span<const double> p_raw);

struct FinnerResult {
  std::size_t control = 0;
  std::vector<double> z;           // 0 for the control
  std::vector<double> p;           // one-sided, NaN for the control
  std::vector<double> p_adjusted;  // NaN for the control
  std::vector<char> equivalent;    // adjusted p >= alpha; true for the control
};

/// Control = best average rank. z = (R_i - R_control) / sqrt(m (m + 1) / (6 n)).
FinnerResult finner_stepdown(std::span<const double> ranks, std::size_t n_datasets, double alpha = 0.05);

enum class SignTestMethod { exact, normal };

/// P(X >= c) for X ~ Binomial(n, 1/2).
double binomial_upper_tail(std::size_t n, std::size_t c);

/// Smallest c with P(X >= c) <= alpha; n + 1 when even c = n is too likely.
/// The normal variant uses a continuity-corrected approximation of the tail.
std::size_t critical_wins(std::size_t n, double alpha, SignTestMethod method = SignTestMethod::exact);

struct SignTestResult {
  std::size_t n = 0;
  std::size_t effective_wins = 0;  // wins + floor(ties / 2)
  std::size_t critical_wins = 0;
  bool significant = false;
};

SignTestResult sign_test(std::size_t wins, std::size_t ties, std::size_t losses, double alpha,
                         SignTestMethod method = SignTestMethod::exact);

/// A group of alternative columns (e.g. the preprocessing variants of one combiner).
struct Family {
  std::string name;
  std::vector<std::size_t> columns;
};

struct FamilyChoice {
  std::string family;
  std::size_t column = 0;  // column of rm
  double rank = 0.0;       // average rank within the family
};

/// Per family, the column with the lowest average rank computed within that
/// family (ties to the earlier column). Returns rm restricted to the winners.
ResultsMatrix best_per_row(const ResultsMatrix& rm, const std::vector<Family>& families,
                           std::vector<FamilyChoice>* choices = nullptr);

}  // namespace dsimb
