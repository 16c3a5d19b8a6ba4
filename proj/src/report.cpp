#include "dsimb/report.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>
#include <stdexcept>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "dsimb/dynsel.hpp"
#include "dsimb/preprocess.hpp"

namespace dsimb {

namespace {

void add_unique(std::vector<std::string>& v, const std::string& s) {
  if (std::find(v.begin(), v.end(), s) == v.end()) v.push_back(s);
}

std::string upper(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::toupper(c); });
  return s;
}

std::string p_text(double p) { return std::isnan(p) ? "" : fmt::format("{:.6g}", p); }

}  // namespace

std::vector<std::string> plan_order(const std::vector<FoldRecord>& records) {
  std::vector<std::string> seen, out;
  for (const auto& r : records) add_unique(seen, r.plan);
  for (const auto& p : default_plans())
    if (std::find(seen.begin(), seen.end(), p.name) != seen.end()) out.push_back(p.name);
  for (const auto& s : seen) add_unique(out, s);
  return out;
}

std::vector<std::string> combiner_order(const std::vector<FoldRecord>& records) {
  std::vector<std::string> seen, out;
  for (const auto& r : records) add_unique(seen, r.combiner);
  for (const char* c : {"kne", "knu", "lca", "rank", "static"})
    if (std::find(seen.begin(), seen.end(), c) != seen.end()) out.push_back(c);
  for (const auto& s : seen) add_unique(out, s);
  return out;
}

std::string column_label(const std::string& plan) {
  if (plan == "Ba") return "Bagging";
  if (plan.rfind("Ba-", 0) == 0) return plan.substr(3);
  return plan;
}

std::string method_label(const std::string& plan, const std::string& combiner) {
  return combiner == "static" ? plan : plan + "+" + upper(combiner);
}

ResultsMatrix cell_means(const std::vector<FoldRecord>& records, Metric metric,
                         const std::vector<std::pair<std::string, std::string>>& methods) {
  std::vector<std::string> datasets;
  std::map<std::pair<std::string, std::size_t>, std::pair<double, std::size_t>> sums;
  std::map<std::pair<std::string, std::string>, std::size_t> column;
  for (std::size_t m = 0; m < methods.size(); ++m) column[methods[m]] = m;
  for (const auto& r : records) {
    auto it = column.find({r.plan, r.combiner});
    if (it == column.end()) continue;
    add_unique(datasets, r.dataset);
    auto& s = sums[{r.dataset, it->second}];
    s.first += metric_value(r, metric);
    ++s.second;
  }
  std::vector<std::string> complete;
  for (const auto& d : datasets) {
    bool ok = true;
    for (std::size_t m = 0; m < methods.size() && ok; ++m) ok = sums.count({d, m}) > 0;
    if (ok) complete.push_back(d);
  }
  std::vector<std::string> names;
  for (const auto& [p, c] : methods) names.push_back(method_label(p, c));
  ResultsMatrix rm(complete, names);
  for (std::size_t d = 0; d < complete.size(); ++d) {
    for (std::size_t m = 0; m < methods.size(); ++m) {
      const auto& s = sums.at({complete[d], m});
      rm.at(d, m) = s.first / static_cast<double>(s.second);
    }
  }
  return rm;
}

RankTable rank_table(const std::vector<FoldRecord>& records, Metric metric, double alpha) {
  RankTable t;
  t.metric = metric;
  t.plans = plan_order(records);
  for (const auto& c : combiner_order(records)) {
    std::vector<std::pair<std::string, std::string>> methods;
    for (const auto& p : t.plans) methods.emplace_back(p, c);
    const ResultsMatrix rm = cell_means(records, metric, methods);
    if (rm.datasets.empty()) continue;
    RankRow row;
    row.combiner = c;
    row.ranks = average_ranks(rm);
    row.n_datasets = rm.datasets.size();
    row.finner = finner_stepdown(row.ranks, row.n_datasets, alpha);
    t.rows.push_back(std::move(row));
  }
  return t;
}

BestTable best_table(const std::vector<FoldRecord>& records, Metric metric, double alpha) {
  BestTable t;
  t.metric = metric;
  const auto plans = plan_order(records);
  std::vector<std::pair<std::string, std::string>> methods;
  std::vector<Family> families;
  for (const auto& c : combiner_order(records)) {
    Family f;
    f.name = c;
    for (const auto& p : plans) {
      f.columns.push_back(methods.size());
      methods.emplace_back(p, c);
    }
    families.push_back(std::move(f));
  }
  const ResultsMatrix all = cell_means(records, metric, methods);
  if (all.datasets.empty()) return t;
  const ResultsMatrix reduced = best_per_row(all, families);
  const auto ranks = average_ranks(reduced);
  const auto fin = finner_stepdown(ranks, reduced.datasets.size(), alpha);
  std::vector<std::size_t> order(ranks.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return ranks[a] < ranks[b]; });
  for (std::size_t i : order) {
    t.methods.push_back(reduced.methods[i]);
    t.ranks.push_back(ranks[i]);
    t.best.push_back(i == fin.control);
    t.equivalent.push_back(fin.equivalent[i]);
    t.p_adjusted.push_back(fin.p_adjusted[i]);
  }
  t.n_datasets = reduced.datasets.size();
  return t;
}

void write_rank_csv(std::ostream& out, const RankTable& t) {
  out << "combiner,plan,avg_rank,best,equivalent,p_adjusted\n";
  for (const auto& row : t.rows) {
    for (std::size_t p = 0; p < t.plans.size(); ++p) {
      fmt::print(out, "{},{},{:.4f},{},{},{}\n", row.combiner, t.plans[p], row.ranks[p],
                 p == row.finner.control ? 1 : 0, row.finner.equivalent[p] ? 1 : 0,
                 p_text(row.finner.p_adjusted[p]));
    }
  }
}

void write_rank_markdown(std::ostream& out, const RankTable& t) {
  std::size_t n = t.rows.empty() ? 0 : t.rows.front().n_datasets;
  fmt::print(out, "Average ranks by {} ({} datasets). Bold: best in row; [x]: equivalent to the best (Finner, 0.05).\n\n",
             to_string(t.metric), n);
  out << "| Algorithm |";
  for (const auto& p : t.plans) out << ' ' << column_label(p) << " |";
  out << "\n|---|";
  for (std::size_t p = 0; p < t.plans.size(); ++p) out << "---|";
  out << '\n';
  for (const auto& row : t.rows) {
    out << "| " << upper(row.combiner) << " |";
    for (std::size_t p = 0; p < t.plans.size(); ++p) {
      const std::string v = fmt::format("{:.2f}", row.ranks[p]);
      if (p == row.finner.control) out << " **" << v << "** |";
      else if (row.finner.equivalent[p]) out << " [" << v << "] |";
      else out << ' ' << v << " |";
    }
    out << '\n';
  }
}

void write_best_csv(std::ostream& out, const std::vector<BestTable>& tables) {
  out << "metric,method,avg_rank,best,equivalent,p_adjusted\n";
  for (const auto& t : tables) {
    for (std::size_t i = 0; i < t.methods.size(); ++i) {
      fmt::print(out, "{},{},{:.4f},{},{},{}\n", to_string(t.metric), t.methods[i], t.ranks[i], t.best[i] ? 1 : 0,
                 t.equivalent[i] ? 1 : 0, p_text(t.p_adjusted[i]));
    }
  }
}

void write_best_markdown(std::ostream& out, const std::vector<BestTable>& tables) {
  out << "Best plan per combiner, re-ranked. [x]: equivalent to the best (Finner, 0.05).\n\n";
  for (const auto& t : tables) {
    fmt::print(out, "{} ({} datasets)\n\n| Method | Rank |\n|---|---|\n", to_string(t.metric), t.n_datasets);
    for (std::size_t i = 0; i < t.methods.size(); ++i) {
      const std::string v = fmt::format("{:.2f}", t.ranks[i]);
      out << "| " << t.methods[i] << " | " << (t.best[i] ? "**" + v + "**" : t.equivalent[i] ? "[" + v + "]" : v)
          << " |\n";
    }
    out << '\n';
  }
}

SignTestReport sign_test_report(const std::vector<FoldRecord>& records, const std::string& combiner,
                                const std::string& baseline, const std::string& challenger, Metric metric,
                                SignTestMethod method) {
  for (const auto& plan : {baseline, challenger}) {
    const bool present = std::any_of(records.begin(), records.end(),
                                     [&](const FoldRecord& r) { return r.plan == plan && r.combiner == combiner; });
    if (!present) throw std::invalid_argument("plan '" + plan + "' with combiner '" + combiner + "' not in records");
  }
  const ResultsMatrix rm = cell_means(records, metric, {{baseline, combiner}, {challenger, combiner}});
  SignTestReport r;
  r.combiner = combiner;
  r.baseline = baseline;
  r.challenger = challenger;
  r.metric = metric;
  for (std::size_t d = 0; d < rm.datasets.size(); ++d) {
    const double diff = rm.at(d, 1) - rm.at(d, 0);
    if (diff > 1e-12) ++r.wins;
    else if (diff < -1e-12) ++r.losses;
    else ++r.ties;
  }
  if (rm.datasets.empty()) throw std::invalid_argument("no dataset has both plans");
  for (double a : {0.1, 0.05, 0.01}) r.lines.push_back({a, sign_test(r.wins, r.ties, r.losses, a, method)});
  return r;
}

void write_sign_test(std::ostream& out, const SignTestReport& r) {
  fmt::print(out, "{} vs {} ({}, {}): wins {}, ties {}, losses {} over {} datasets\n", r.challenger, r.baseline,
             upper(r.combiner), to_string(r.metric), r.wins, r.ties, r.losses, r.wins + r.ties + r.losses);
  for (const auto& l : r.lines) {
    fmt::print(out, "  alpha {:<5} critical wins {:>3}  effective wins {:>3}  {}\n", l.alpha, l.result.critical_wins,
               l.result.effective_wins, l.result.significant ? "significant" : "not significant");
  }
}

}  // namespace dsimb
