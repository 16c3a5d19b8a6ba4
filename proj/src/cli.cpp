#include "dsimb/cli.hpp"

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "dsimb/dataset.hpp"
#include "dsimb/preprocess.hpp"
#include "dsimb/report.hpp"

namespace dsimb {

namespace {

using nlohmann::json;

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<FoldRecord> load_records(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open " + p.string());
  return read_records(in);
}

void write_text(const std::filesystem::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + p.string());
  out << text;
}

json class_summary(const Dataset& d) {
  json counts = json::object();
  const auto c = class_counts(d);
  for (std::size_t i = 0; i < c.size(); ++i) counts[d.class_names()[i]] = c[i];
  json s = {{"instances", d.size()}, {"counts", counts}};
  try {
    const auto ir = imbalance_ratio(c);
    s["ir"] = ir.ratio;
    s["ir_group"] = to_string(ir.group);
  } catch (const DataError&) {
    s["ir"] = nullptr;
  }
  return s;
}

struct RunArgs {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  bool markdown = false;
};

int cmd_run(const RunArgs& a, bool quiet, std::ostream& out, std::ostream& err) {
  ExperimentConfig cfg;
  try {
    const std::filesystem::path path(a.config);
    cfg = parse_config(read_file(path), path.parent_path());
    if (a.seed) cfg.seed = *a.seed;
    if (a.out) cfg.output_dir = *a.out;
    cfg.validate();
  } catch (const std::exception& e) {
    err << "config error: " << e.what() << '\n';
    return exit_usage;
  }

  const RunResult result = run_experiment(cfg, quiet ? nullptr : &err);
  std::filesystem::create_directories(cfg.output_dir);
  {
    std::ostringstream s;
    write_records(s, result.records);
    write_text(cfg.output_dir / "fold_records.csv", s.str());
  }
  std::vector<BestTable> best;
  for (Metric m : {Metric::auc, Metric::fmeasure, Metric::gmean}) {
    const RankTable t = rank_table(result.records, m);
    std::ostringstream csv, md;
    write_rank_csv(csv, t);
    write_rank_markdown(md, t);
    write_text(cfg.output_dir / ("ranks_" + std::string(to_string(m)) + ".csv"), csv.str());
    if (a.markdown) write_text(cfg.output_dir / ("ranks_" + std::string(to_string(m)) + ".md"), md.str());
    out << md.str() << '\n';
    best.push_back(best_table(result.records, m));
  }
  std::ostringstream csv, md;
  write_best_csv(csv, best);
  write_best_markdown(md, best);
  write_text(cfg.output_dir / "best_per_row.csv", csv.str());
  if (a.markdown) write_text(cfg.output_dir / "best_per_row.md", md.str());
  out << md.str();

  for (const auto& w : result.warnings) err << "warning: " << w << '\n';
  out << result.records.size() << " fold records written to " << cfg.output_dir.string() << '\n';
  if (!result.failures.empty()) {
    err << result.failures.size() << " dataset(s) failed:\n";
    for (const auto& f : result.failures) err << "  " << f.dataset << ": " << f.message << '\n';
    return exit_partial;
  }
  return exit_ok;
}

}  // namespace

ExperimentConfig parse_config(const std::string& json_text, const std::filesystem::path& base_dir) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw std::invalid_argument("config must be a JSON object");

  static const std::set<std::string> known = {"datasets", "plans",    "combiners", "pool_size",     "k",
                                              "seed",     "output",   "rank_mode", "record_timings"};
  for (const auto& [key, value] : j.items()) {
    if (!known.count(key)) throw std::invalid_argument("unknown field \"" + key + "\"");
  }
  auto field = [&](const char* name) -> const json& {
    try {
      return j.at(name);
    } catch (const json::exception&) {
      throw std::invalid_argument(std::string("missing required field \"") + name + "\"");
    }
  };
  auto typed = [](const char* name, auto&& get) {
    try {
      return get();
    } catch (const json::exception&) {
      throw std::invalid_argument(std::string("field \"") + name + "\" has the wrong type");
    }
  };

  ExperimentConfig cfg;
  for (const auto& p : typed("datasets", [&] { return field("datasets").get<std::vector<std::string>>(); })) {
    const std::filesystem::path path(p);
    cfg.datasets.push_back(path.is_absolute() ? path : base_dir / path);
  }
  if (cfg.datasets.empty()) throw std::invalid_argument("field \"datasets\" is empty");
  if (j.contains("plans")) {
    cfg.plans.clear();
    for (const auto& name : typed("plans", [&] { return j["plans"].get<std::vector<std::string>>(); })) {
      try {
        cfg.plans.push_back({name, plan_by_name(name)});
      } catch (const std::invalid_argument& e) {
        throw std::invalid_argument(std::string("field \"plans\": ") + e.what());
      }
    }
  }
  if (j.contains("combiners")) {
    cfg.combiners.clear();
    for (const auto& name : typed("combiners", [&] { return j["combiners"].get<std::vector<std::string>>(); })) {
      try {
        cfg.combiners.push_back(parse_combiner(name));
      } catch (const std::invalid_argument& e) {
        throw std::invalid_argument(std::string("field \"combiners\": ") + e.what());
      }
    }
  }
  if (j.contains("pool_size")) cfg.pool_size = typed("pool_size", [&] { return j["pool_size"].get<std::size_t>(); });
  if (j.contains("k")) cfg.k = typed("k", [&] { return j["k"].get<std::size_t>(); });
  if (j.contains("seed")) cfg.seed = typed("seed", [&] { return j["seed"].get<std::uint64_t>(); });
  if (j.contains("output")) {
    const std::filesystem::path o(typed("output", [&] { return j["output"].get<std::string>(); }));
    cfg.output_dir = o.is_absolute() ? o : base_dir / o;
  }
  if (j.contains("rank_mode")) {
    const auto m = typed("rank_mode", [&] { return j["rank_mode"].get<std::string>(); });
    if (m == "filtered") cfg.rank_mode = RankMode::filtered;
    else if (m == "unfiltered") cfg.rank_mode = RankMode::unfiltered;
    else throw std::invalid_argument("field \"rank_mode\" must be filtered or unfiltered");
  }
  if (j.contains("record_timings")) {
    cfg.record_timings = typed("record_timings", [&] { return j["record_timings"].get<bool>(); });
  }
  cfg.validate();
  return cfg;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Dynamic ensemble selection with preprocessing for multi-class imbalanced data"};
  app.require_subcommand(1, 1);
  bool quiet = false;
  app.add_flag("-q,--quiet", quiet, "Suppress progress output");

  RunArgs run_args;
  auto* run = app.add_subcommand("run", "Run the cross-validation experiment");
  run->add_option("--config", run_args.config, "JSON experiment config")->required();
  run->add_option("--seed", run_args.seed, "Override the master seed");
  run->add_option("--out", run_args.out, "Override the output directory");
  run->add_flag("--markdown", run_args.markdown, "Also write Markdown tables");

  std::string records, metric_name, baseline, challenger, combiner, method_name = "exact";
  double alpha = 0.05;
  auto* rank = app.add_subcommand("rank", "Average-rank tables from fold records");
  rank->add_option("--records", records, "Fold record CSV")->required();
  rank->add_option("--metric", metric_name, "auc, fmeasure or gmean")->required();
  rank->add_option("--alpha", alpha, "Finner significance level");

  auto* sign = app.add_subcommand("signtest", "Sign test of two plans");
  sign->add_option("--records", records, "Fold record CSV")->required();
  sign->add_option("--baseline", baseline, "Baseline plan")->required();
  sign->add_option("--challenger", challenger, "Challenger plan")->required();
  sign->add_option("--metric", metric_name, "auc, fmeasure or gmean")->required();
  sign->add_option("--combiner", combiner, "Combiner (default: every combiner in the records)");
  sign->add_option("--method", method_name, "exact or normal")->check(CLI::IsMember({"exact", "normal"}));

  std::string in_path, out_path, variant_name;
  std::string resample_method;
  std::uint64_t seed = 1;
  ResamplePlan rplan;
  auto* resample = app.add_subcommand("resample", "Resample a dataset");
  resample->add_option("--in", in_path, "Input dataset")->required();
  resample->add_option("--out", out_path, "Output dataset (.dat writes KEEL, else CSV)")->required();
  resample->add_option("--method", resample_method, "none, smote, ramo, random_balance or rus")->required();
  resample->add_option("--variant", variant_name, "equalize, double_minority or random");
  resample->add_option("--seed", seed, "Random seed");
  resample->add_option("--k", rplan.k_smote, "SMOTE neighbours");
  resample->add_option("--k1", rplan.k1, "RAMO difficulty neighbours");
  resample->add_option("--k2", rplan.k2, "RAMO interpolation neighbours");
  resample->add_option("--alpha", rplan.alpha, "RAMO steepness");

  std::string data_path;
  auto* inspect = app.add_subcommand("inspect", "Schema, class counts and imbalance ratio");
  inspect->add_option("--data", data_path, "Dataset file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_ok;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    if (e.get_exit_code() == 0) return exit_ok;
    err << "run with --help for usage\n";
    return exit_usage;
  }

  try {
    if (run->parsed()) return cmd_run(run_args, quiet, out, err);

    if (rank->parsed()) {
      const Metric m = parse_metric(metric_name);
      const auto recs = load_records(records);
      const RankTable t = rank_table(recs, m, alpha);
      write_rank_markdown(out, t);
      out << "\nFinner step-down against the best plan of each row:\n";
      for (const auto& row : t.rows) {
        out << "  " << row.combiner << ": best " << t.plans[row.finner.control];
        for (std::size_t p = 0; p < t.plans.size(); ++p) {
          if (p == row.finner.control) continue;
          out << ", " << t.plans[p] << " p=" << row.finner.p_adjusted[p] << (row.finner.equivalent[p] ? " (equiv)" : "");
        }
        out << '\n';
      }
      out << '\n';
      write_best_markdown(out, {best_table(recs, m, alpha)});
      return exit_ok;
    }

    if (sign->parsed()) {
      const Metric m = parse_metric(metric_name);
      const auto recs = load_records(records);
      const auto how = method_name == "normal" ? SignTestMethod::normal : SignTestMethod::exact;
      std::vector<std::string> combiners = combiner.empty() ? combiner_order(recs) : std::vector<std::string>{combiner};
      for (const auto& c : combiners) write_sign_test(out, sign_test_report(recs, c, baseline, challenger, m, how));
      return exit_ok;
    }

    if (resample->parsed()) {
      rplan.method = parse_method(resample_method);
      if (!variant_name.empty()) rplan.variant = parse_variant(variant_name);
      else if (rplan.method == Method::random_balance) rplan.variant = Variant::random;
      rplan.seed = seed;
      rplan.validate();
      const auto loaded = load(in_path);
      const Dataset after = apply(loaded.data, rplan);
      save(after, out_path);
      const json summary = {{"method", to_string(rplan.method)},
                            {"variant", to_string(rplan.variant)},
                            {"seed", seed},
                            {"imputed", loaded.imputed},
                            {"before", class_summary(loaded.data)},
                            {"after", class_summary(after)}};
      out << summary.dump(2) << '\n';
      return exit_ok;
    }

    if (inspect->parsed()) {
      const auto loaded = load(data_path);
      const Dataset& d = loaded.data;
      std::size_t nominal = 0;
      for (const auto& a : d.schema()) nominal += a.is_nominal();
      out << "name: " << d.name() << "\ninstances: " << d.size() << "\nattributes: " << d.num_attributes() << " ("
          << d.num_attributes() - nominal << " numeric, " << nominal << " nominal)\n";
      for (const auto& a : d.schema()) {
        out << "  " << a.name << ": ";
        if (a.is_nominal()) {
          out << "nominal {";
          for (std::size_t v = 0; v < a.nominal_values.size(); ++v) out << (v ? ", " : "") << a.nominal_values[v];
          out << "}\n";
        } else {
          out << "numeric [" << a.observed_min << ", " << a.observed_max << "]\n";
        }
      }
      const auto counts = class_counts(d);
      out << "classes: " << d.num_classes() << '\n';
      for (std::size_t c = 0; c < counts.size(); ++c) out << "  " << d.class_names()[c] << ": " << counts[c] << '\n';
      const auto ir = imbalance_ratio(counts);
      out << "imbalance ratio: " << ir.ratio << " (" << to_string(ir.group) << ")\n";
      out << "imputed values: " << loaded.imputed << '\n';
      return exit_ok;
    }
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return exit_usage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_partial;
  }
  return exit_usage;
}

}  // namespace dsimb
