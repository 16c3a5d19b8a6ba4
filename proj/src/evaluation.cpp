#include "dsimb/evaluation.hpp"

#include <chrono>
#include <charconv>
#include <exception>
#include <istream>
#include <ostream>
#include <set>

#include "dsimb/metrics.hpp"
#include "dsimb/parallel.hpp"
#include "dsimb/pool.hpp"
#include "dsimb/rng.hpp"

namespace dsimb {

namespace {

using clock_type = std::chrono::steady_clock;

double ms_since(clock_type::time_point t0) {
  return std::chrono::duration<double, std::milli>(clock_type::now() - t0).count();
}

std::string fmt_real(double v) {
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, p);
}

std::string quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> out(1);
  bool q = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (q) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        out.back() += '"';
        ++i;
      } else if (c == '"') {
        q = false;
      } else {
        out.back() += c;
      }
    } else if (c == '"') {
      q = true;
    } else if (c == ',') {
      out.emplace_back();
    } else if (c != '\r') {
      out.back() += c;
    }
  }
  return out;
}

const char* const header = "dataset,repetition,fold,plan,combiner,auc,fmeasure,gmean,train_ms,test_ms";

}  // namespace

void ExperimentConfig::validate() const {
  if (datasets.empty()) throw std::invalid_argument("datasets: at least one dataset is required");
  if (plans.empty()) throw std::invalid_argument("plans: at least one plan is required");
  if (combiners.empty()) throw std::invalid_argument("combiners: at least one combiner is required");
  if (pool_size == 0) throw std::invalid_argument("pool_size: must be at least 1");
  if (k == 0) throw std::invalid_argument("k: must be at least 1");
  std::set<std::string> names;
  for (const auto& p : plans) {
    if (!names.insert(p.name).second) throw std::invalid_argument("plans: duplicate plan '" + p.name + "'");
    p.plan.validate();
  }
}

std::vector<FoldRecord> evaluate_dataset(const Dataset& d, const ExperimentConfig& cfg,
                                         std::vector<std::string>* warnings) {
  const std::uint64_t tag = hash_name(d.name());
  const SplitPlan split = make_5x2_split(d, derive_seed(cfg.seed, {tag}));
  if (warnings)
    for (const auto& w : split.warnings) warnings->push_back(d.name() + ": " + w);

  const std::size_t P = cfg.plans.size(), K = cfg.combiners.size();
  const std::size_t tasks = SplitPlan::repetitions * 2 * P;
  std::vector<FoldRecord> records(tasks * K);
  std::vector<std::exception_ptr> errors(tasks);

#pragma omp parallel for schedule(dynamic) num_threads(thread_count())
  for (std::int64_t s = 0; s < static_cast<std::int64_t>(tasks); ++s) {
    const auto task = static_cast<std::size_t>(s);
    const std::size_t rep = task / (2 * P), fold = task / P % 2, pi = task % P;
    try {
      const auto& plan = cfg.plans[pi];
      const Dataset train = d.subset(split.train(rep, fold));
      const Dataset test = d.subset(split.test(rep, fold));
      const std::uint64_t master = derive_seed(cfg.seed, {tag, rep, fold, hash_name(plan.name)});

      const auto t0 = clock_type::now();
      const EnsembleModel model = EnsembleModel::train(train, plan.plan, cfg.pool_size, master);
      const double train_ms = ms_since(t0);

      std::vector<ScoredPredictions> sp(K);
      std::vector<double> test_ms(K, 0.0);
      for (auto& p : sp) p.num_classes = d.num_classes();
      for (std::size_t i = 0; i < test.size(); ++i) {
        const auto x = test.row(i);
        const auto t1 = clock_type::now();
        const CompetenceRegion r = region(model, x, cfg.k);
        const double region_ms = ms_since(t1);
        for (std::size_t c = 0; c < K; ++c) {
          const auto t2 = clock_type::now();
          const Prediction p = combine(model, x, r, cfg.combiners[c], cfg.rank_mode);
          test_ms[c] += ms_since(t2) + region_ms;
          sp[c].add(test.label(i), p.label, p.scores);
        }
      }
      for (std::size_t c = 0; c < K; ++c) {
        const ConfusionMatrix cm(d.num_classes(), sp[c].truth, sp[c].predicted);
        FoldRecord& rec = records[task * K + c];
        rec.dataset = d.name();
        rec.repetition = rep + 1;
        rec.fold = fold + 1;
        rec.plan = plan.name;
        rec.combiner = to_string(cfg.combiners[c]);
        rec.auc = auc_multiclass(sp[c]);
        rec.fmeasure = f_measure(cm);
        rec.gmean = g_mean(cm);
        rec.train_ms = cfg.record_timings ? train_ms : 0.0;
        rec.test_ms = cfg.record_timings ? test_ms[c] : 0.0;
      }
    } catch (...) {
      errors[task] = std::current_exception();
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return records;
}

RunResult run_experiment(const ExperimentConfig& cfg, std::ostream* log) {
  cfg.validate();
  RunResult result;
  for (const auto& path : cfg.datasets) {
    const std::string name = path.stem().string();
    try {
      auto loaded = load(path);
      loaded.data.set_name(name);
      if (log) {
        *log << name << ": " << loaded.data.size() << " instances, " << loaded.data.num_classes() << " classes";
        if (loaded.imputed) *log << ", " << loaded.imputed << " missing values imputed";
        *log << '\n';
      }
      const auto t0 = clock_type::now();
      auto recs = evaluate_dataset(loaded.data, cfg, &result.warnings);
      if (log) *log << name << ": done in " << static_cast<long>(ms_since(t0) / 1000.0) << " s\n";
      result.records.insert(result.records.end(), recs.begin(), recs.end());
    } catch (const std::exception& e) {
      result.failures.push_back({name, e.what()});
      if (log) *log << name << ": FAILED: " << e.what() << '\n';
    }
  }
  return result;
}

const char* to_string(Metric m) {
  switch (m) {
    case Metric::auc: return "auc";
    case Metric::fmeasure: return "fmeasure";
    case Metric::gmean: return "gmean";
  }
  return "?";
}

Metric parse_metric(const std::string& s) {
  for (Metric m : {Metric::auc, Metric::fmeasure, Metric::gmean})
    if (s == to_string(m)) return m;
  throw std::invalid_argument("unknown metric '" + s + "' (expected auc, fmeasure or gmean)");
}

double metric_value(const FoldRecord& r, Metric m) {
  switch (m) {
    case Metric::auc: return r.auc;
    case Metric::fmeasure: return r.fmeasure;
    case Metric::gmean: return r.gmean;
  }
  return 0.0;
}

void write_records(std::ostream& out, const std::vector<FoldRecord>& records) {
  out << header << '\n';
  for (const auto& r : records) {
    out << quote(r.dataset) << ',' << r.repetition << ',' << r.fold << ',' << quote(r.plan) << ',' << quote(r.combiner)
        << ',' << fmt_real(r.auc) << ',' << fmt_real(r.fmeasure) << ',' << fmt_real(r.gmean) << ','
        << fmt_real(r.train_ms) << ',' << fmt_real(r.test_ms) << '\n';
  }
}

std::vector<FoldRecord> read_records(std::istream& in) {
  std::string line;
  std::size_t n = 1;
  if (!std::getline(in, line)) throw ParseError("empty record file", 1);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != header) throw ParseError("unexpected header, expected: " + std::string(header), 1);
  auto number = [&](const std::string& s) {
    double v = 0.0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size()) throw ParseError("invalid number '" + s + "'", n);
    return v;
  };
  auto count = [&](const std::string& s) {
    std::size_t v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size()) throw ParseError("invalid count '" + s + "'", n);
    return v;
  };
  std::vector<FoldRecord> out;
  while (std::getline(in, line)) {
    ++n;
    if (line.empty() || line == "\r") continue;
    const auto f = split_line(line);
    if (f.size() != 10) throw ParseError("expected 10 fields, found " + std::to_string(f.size()), n);
    FoldRecord r;
    r.dataset = f[0];
    r.repetition = count(f[1]);
    r.fold = count(f[2]);
    r.plan = f[3];
    r.combiner = f[4];
    r.auc = number(f[5]);
    r.fmeasure = number(f[6]);
    r.gmean = number(f[7]);
    r.train_ms = number(f[8]);
    r.test_ms = number(f[9]);
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace dsimb
