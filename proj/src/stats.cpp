#include "dsimb/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace dsimb {

ResultsMatrix ResultsMatrix::columns(std::span<const std::size_t> cols) const {
  std::vector<std::string> names;
  for (std::size_t c : cols) names.push_back(methods.at(c));
  ResultsMatrix out(datasets, std::move(names));
  for (std::size_t d = 0; d < datasets.size(); ++d)
    for (std::size_t k = 0; k < cols.size(); ++k) out.at(d, k) = at(d, cols[k]);
  return out;
}

std::vector<double> rank_row(std::span<const double> values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] > values[b]; });
  std::vector<double> ranks(values.size());
  for (std::size_t a = 0; a < order.size();) {
    std::size_t b = a;
    while (b < order.size() && values[order[b]] == values[order[a]]) ++b;
    const double mid = (static_cast<double>(a + 1) + static_cast<double>(b)) / 2.0;
    for (std::size_t t = a; t < b; ++t) ranks[order[t]] = mid;
    a = b;
  }
  return ranks;
}

std::vector<double> average_ranks(const ResultsMatrix& rm) {
  std::vector<double> sum(rm.methods.size(), 0.0);
  for (std::size_t d = 0; d < rm.datasets.size(); ++d) {
    const auto r = rank_row(rm.row(d));
    for (std::size_t m = 0; m < r.size(); ++m) sum[m] += r[m];
  }
  if (!rm.datasets.empty())
    for (auto& s : sum) s /= static_cast<double>(rm.datasets.size());
  return sum;
}

std::size_t best_index(std::span<const double> ranks) {
  if (ranks.empty()) throw std::invalid_argument("no ranks");
  return static_cast<std::size_t>(std::min_element(ranks.begin(), ranks.end()) - ranks.begin());
}

double normal_upper_tail(double z) { return 0.5 * std::erfc(z / std::sqrt(2.0)); }

std::vector<double> finner_adjust(std::span<const double> p_raw) {
  const std::size_t k = p_raw.size();
  std::vector<std::size_t> order(k);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return p_raw[a] < p_raw[b]; });
  std::vector<double> adj(k);
  double running = 0.0;
  for (std::size_t j = 0; j < k; ++j) {
    const double p = p_raw[order[j]];
    const double a = 1.0 - std::pow(1.0 - p, static_cast<double>(k) / static_cast<double>(j + 1));
    running = std::min(1.0, std::max(running, a));
    adj[order[j]] = running;
  }
  return adj;
}

FinnerResult finner_stepdown(std::span<const double> ranks, std::size_t n_datasets, double alpha) {
  const std::size_t m = ranks.size();
  if (m == 0) throw std::invalid_argument("no methods to compare");
  if (n_datasets == 0) throw std::invalid_argument("no datasets");
  FinnerResult r;
  r.control = best_index(ranks);
  const double nan = std::numeric_limits<double>::quiet_NaN();
  r.z.assign(m, 0.0);
  r.p.assign(m, nan);
  r.p_adjusted.assign(m, nan);
  r.equivalent.assign(m, 1);
  const double se = std::sqrt(static_cast<double>(m * (m + 1)) / (6.0 * static_cast<double>(n_datasets)));
  std::vector<double> p;
  std::vector<std::size_t> who;
  for (std::size_t i = 0; i < m; ++i) {
    if (i == r.control) continue;
    r.z[i] = (ranks[i] - ranks[r.control]) / se;
    r.p[i] = normal_upper_tail(r.z[i]);
    p.push_back(r.p[i]);
    who.push_back(i);
  }
  const auto adj = finner_adjust(p);
  for (std::size_t j = 0; j < who.size(); ++j) {
    r.p_adjusted[who[j]] = adj[j];
    r.equivalent[who[j]] = adj[j] >= alpha;
  }
  return r;
}

double binomial_upper_tail(std::size_t n, std::size_t c) {
  if (c == 0) return 1.0;
  if (c > n) return 0.0;
  const double ln2 = std::log(2.0);
  const double lgn = std::lgamma(static_cast<double>(n) + 1.0);
  double tail = 0.0;
  for (std::size_t k = c; k <= n; ++k) {
    const double lp = lgn - std::lgamma(static_cast<double>(k) + 1.0) - std::lgamma(static_cast<double>(n - k) + 1.0) -
                      static_cast<double>(n) * ln2;
    tail += std::exp(lp);
  }
  return std::min(1.0, tail);
}

std::size_t critical_wins(std::size_t n, double alpha, SignTestMethod method) {
  for (std::size_t c = 0; c <= n; ++c) {
    double tail;
    if (method == SignTestMethod::exact) {
      tail = binomial_upper_tail(n, c);
    } else {
      const double half = static_cast<double>(n) / 2.0;
      tail = normal_upper_tail((static_cast<double>(c) - 0.5 - half) / (std::sqrt(static_cast<double>(n)) / 2.0));
    }
    if (tail <= alpha) return c;
  }
  return n + 1;
}

SignTestResult sign_test(std::size_t wins, std::size_t ties, std::size_t losses, double alpha,
                         SignTestMethod method) {
  SignTestResult r;
  r.n = wins + ties + losses;
  if (r.n == 0) throw std::invalid_argument("sign test needs at least one comparison");
  r.effective_wins = wins + ties / 2;
  r.critical_wins = critical_wins(r.n, alpha, method);
  r.significant = r.effective_wins >= r.critical_wins;
  return r;
}

ResultsMatrix best_per_row(const ResultsMatrix& rm, const std::vector<Family>& families,
                           std::vector<FamilyChoice>* choices) {
  std::vector<std::size_t> keep;
  for (const auto& f : families) {
    if (f.columns.empty()) throw std::invalid_argument("family '" + f.name + "' has no columns");
    const auto ranks = average_ranks(rm.columns(f.columns));
    const std::size_t b = best_index(ranks);
    keep.push_back(f.columns[b]);
    if (choices) choices->push_back({f.name, f.columns[b], ranks[b]});
  }
  return rm.columns(keep);
}

}  // namespace dsimb
