#include "pclabel/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pclabel/baselines.hpp"
#include "pclabel/error.hpp"
#include "pclabel/hardness.hpp"
#include "pclabel/label.hpp"
#include "pclabel/search.hpp"

namespace pclabel::cli {

namespace {

using nlohmann::json;

struct LoaderFlags {
  std::string input;
  bool no_header = false;
  std::string missing_token;
  std::string count_col;
  std::vector<std::string> bucketize_specs;  // attr:bins[:strategy]
};

void add_loader_flags(CLI::App* cmd, LoaderFlags& flags, bool required = true) {
  auto* opt = cmd->add_option("--input,-i", flags.input, "input CSV path");
  if (required) opt->required();
  cmd->add_flag("--no-header", flags.no_header, "input has no header row");
  cmd->add_option("--missing", flags.missing_token,
                  "cell text treated as missing (default: empty string)");
  cmd->add_option("--count-col", flags.count_col,
                  "weight column replicating logical rows");
  cmd->add_option("--bucketize", flags.bucketize_specs,
                  "attr:bins[:strategy] with strategy equal-width (default) or "
                  "equal-frequency; repeatable");
}

Dataset load_dataset(const LoaderFlags& flags) {
  CsvOptions options;
  options.has_header = !flags.no_header;
  options.missing_token = flags.missing_token;
  if (!flags.count_col.empty()) options.weight_column = flags.count_col;
  Dataset d = load_csv_file(flags.input, options);
  for (const auto& spec : flags.bucketize_specs) {
    std::vector<std::string> parts;
    std::stringstream ss(spec);
    std::string part;
    while (std::getline(ss, part, ':')) parts.push_back(part);
    if (parts.size() < 2 || parts.size() > 3) {
      throw ValidationError("bad --bucketize spec '" + spec +
                            "', expected attr:bins[:strategy]");
    }
    const int attr = d.attribute_index(parts[0]);
    if (attr < 0) throw ValidationError("unknown attribute '" + parts[0] + "'");
    int bins = 0;
    try {
      bins = std::stoi(parts[1]);
    } catch (...) {
      throw ValidationError("bad bin count in --bucketize spec '" + spec + "'");
    }
    BucketStrategy strategy = BucketStrategy::EqualWidth;
    if (parts.size() == 3) {
      if (parts[2] == "equal-width" || parts[2] == "ew") {
        strategy = BucketStrategy::EqualWidth;
      } else if (parts[2] == "equal-frequency" || parts[2] == "ef") {
        strategy = BucketStrategy::EqualFrequency;
      } else {
        throw ValidationError("unknown bucketize strategy '" + parts[2] + "'");
      }
    }
    d = bucketize(d, attr, bins, strategy);
  }
  return d;
}

int default_threads() {
  if (const char* env = std::getenv("PCLABEL_THREADS")) {
    try {
      const int t = std::stoi(env);
      if (t >= 1) return t;
    } catch (...) {
    }
  }
  return 1;
}

Objective parse_objective(const std::string& text) {
  if (text == "max-abs") return Objective::MaxAbs;
  if (text == "max-q") return Objective::MaxQ;
  if (text == "mean-q") return Objective::MeanQ;
  throw ValidationError("unknown objective '" + text + "'");
}

EvalMode parse_eval_mode(const std::string& text) {
  if (text == "exact") return EvalMode::Exact;
  if (text == "sorted") return EvalMode::SortedEarlyExit;
  throw ValidationError("unknown eval mode '" + text + "'");
}

// Pattern files are JSON arrays of patterns, each a list of
// {"attr": name, "value": label} bindings.
std::vector<Pattern> parse_pattern_file(const std::string& path, const Dataset& d) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw FormatError("pattern file '" + path + "': " + e.what());
  }
  if (!j.is_array()) throw FormatError("pattern file must hold a JSON array");
  std::vector<Pattern> patterns;
  for (const auto& entry : j) {
    std::vector<Pattern::Binding> bindings;
    for (const auto& b : entry) {
      const auto name = b.at("attr").get<std::string>();
      const auto value = b.at("value").get<std::string>();
      const int attr = d.attribute_index(name);
      if (attr < 0) throw ValidationError("unknown attribute '" + name + "'");
      const auto& domain = d.attribute(attr).domain;
      const auto it = std::find(domain.begin(), domain.end(), value);
      if (it == domain.end()) {
        throw ValidationError("unknown value '" + value + "' for attribute '" +
                              name + "'");
      }
      bindings.push_back(
          {attr, static_cast<std::int32_t>(it - domain.begin())});
    }
    patterns.emplace_back(std::move(bindings));
  }
  return patterns;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path + "'");
  out << content;
  if (!out) throw IoError("write failed for '" + path + "'");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Seed flag: either a comma-separated list or a count N meaning seeds 1..N.
std::vector<std::uint64_t> parse_seeds(const std::string& text) {
  std::vector<std::uint64_t> seeds;
  if (text.find(',') == std::string::npos) {
    const auto count = std::stoull(text);
    if (count < 1) throw ValidationError("--seeds needs at least one seed");
    for (std::uint64_t s = 1; s <= count; ++s) seeds.push_back(s);
    return seeds;
  }
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) seeds.push_back(std::stoull(item));
  return seeds;
}

// --------------------------------------------------------------------------
// profile
// --------------------------------------------------------------------------

struct ProfileArgs {
  LoaderFlags loader;
  std::int64_t bound = 10;
  std::string algorithm = "topdown";
  std::string objective = "max-abs";
  std::string eval = "exact";
  std::string patterns_path;
  std::string out = "label.json";
  std::string stats_path;
  int threads = 0;
};

int run_profile(const ProfileArgs& args) {
  Dataset d = load_dataset(args.loader);
  SearchConfig cfg;
  cfg.size_bound = args.bound;
  cfg.objective = parse_objective(args.objective);
  cfg.eval_mode = parse_eval_mode(args.eval);
  cfg.threads = args.threads > 0 ? args.threads : default_threads();
  if (!args.patterns_path.empty()) {
    cfg.patterns = parse_pattern_file(args.patterns_path, d);
  }

  SearchResult result;
  if (args.algorithm == "topdown") {
    result = top_down_search(d, cfg);
  } else if (args.algorithm == "naive") {
    result = naive_search(d, cfg);
  } else if (args.algorithm == "bruteforce") {
    result = brute_force_optimal(d, cfg);
  } else {
    throw ValidationError("unknown algorithm '" + args.algorithm + "'");
  }

  write_file(args.out, serialize(result.label));
  const std::string stats_path =
      args.stats_path.empty() ? args.out + ".stats.json" : args.stats_path;
  write_file(stats_path, result.stats.to_json());

  json summary;
  summary["subset"] = result.subset.indices();
  json names = json::array();
  for (int a : result.subset.indices()) names.push_back(d.attribute(a).name);
  summary["subset_names"] = names;
  summary["error"] = result.error;
  summary["label_size"] = result.label.size();
  summary["label_file"] = args.out;
  summary["stats_file"] = stats_path;
  std::cout << summary.dump(2) << "\n";
  return 0;
}

// --------------------------------------------------------------------------
// estimate
// --------------------------------------------------------------------------

struct EstimateArgs {
  std::string label_path;
  std::string pattern_spec;
  std::string patterns_path;
  LoaderFlags loader;
  bool pretty = false;
};

int run_estimate(const EstimateArgs& args) {
  Label label = deserialize(read_file(args.label_path));

  std::optional<Dataset> dataset;
  if (!args.loader.input.empty()) {
    dataset = load_dataset(args.loader);
    label.validate_against(*dataset);
  }

  // Patterns resolve against the label's embedded schema when no dataset is
  // given; building a throwaway dataset-less resolver would duplicate the
  // domain lookups, so reuse the schema directly.
  auto resolve = [&](const std::string& name,
                     const std::string& value) -> Pattern::Binding {
    for (const auto& a : label.schema()) {
      if (a.name != name) continue;
      const auto it = std::find(a.domain.begin(), a.domain.end(), value);
      if (it == a.domain.end()) {
        throw ValidationError("unknown value '" + value + "' for attribute '" +
                              name + "'");
      }
      return {a.index, static_cast<std::int32_t>(it - a.domain.begin())};
    }
    throw ValidationError("unknown attribute '" + name + "'");
  };

  std::vector<Pattern> patterns;
  if (!args.pattern_spec.empty()) {
    std::vector<Pattern::Binding> bindings;
    std::stringstream ss(args.pattern_spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
      const auto eq = item.find('=');
      if (eq == std::string::npos) {
        throw ValidationError("bad pattern binding '" + item + "'");
      }
      bindings.push_back(resolve(item.substr(0, eq), item.substr(eq + 1)));
    }
    patterns.emplace_back(std::move(bindings));
  }
  if (!args.patterns_path.empty()) {
    std::ifstream in(args.patterns_path);
    if (!in) throw IoError("cannot open '" + args.patterns_path + "'");
    json j;
    try {
      in >> j;
    } catch (const json::parse_error& e) {
      throw FormatError(std::string("pattern file: ") + e.what());
    }
    for (const auto& entry : j) {
      std::vector<Pattern::Binding> bindings;
      for (const auto& b : entry) {
        bindings.push_back(resolve(b.at("attr").get<std::string>(),
                                   b.at("value").get<std::string>()));
      }
      patterns.emplace_back(std::move(bindings));
    }
  }
  if (patterns.empty()) {
    throw ValidationError("estimate needs --pattern or --patterns");
  }

  json out = json::array();
  for (const auto& p : patterns) {
    json row;
    const double est = label.estimate(p);
    row["estimate"] = est;
    if (dataset) {
      const std::int64_t true_count = count_pattern(*dataset, p);
      row["true_count"] = true_count;
      row["abs_error"] = std::abs(static_cast<double>(true_count) - est);
    }
    out.push_back(row);
    if (args.pretty) {
      std::cout << "estimate = " << est;
      if (dataset) {
        std::cout << "  (true " << row["true_count"] << ", abs error "
                  << row["abs_error"] << ")";
      }
      std::cout << "\n";
    }
  }
  if (!args.pretty) std::cout << out.dump(2) << "\n";
  return 0;
}

// --------------------------------------------------------------------------
// evaluate
// --------------------------------------------------------------------------

struct EvaluateArgs {
  std::string label_path;
  LoaderFlags loader;
  std::string patterns_path;
  std::string mode = "exact";
  std::string out;
  int threads = 0;
};

int run_evaluate(const EvaluateArgs& args) {
  Label label = deserialize(read_file(args.label_path));
  Dataset d = load_dataset(args.loader);
  label.validate_against(d);

  std::vector<Pattern> patterns;
  if (!args.patterns_path.empty()) {
    patterns = parse_pattern_file(args.patterns_path, d);
  } else {
    for (auto& g : patterns_over(d, d.all_attributes())) {
      patterns.push_back(std::move(g.pattern));
    }
  }
  const int threads = args.threads > 0 ? args.threads : default_threads();
  EvaluationReport report =
      evaluate(label, d, patterns, parse_eval_mode(args.mode), threads);
  const std::string text = report.to_json(label.schema());
  if (args.out.empty()) {
    std::cout << text;
  } else {
    write_file(args.out, text);
  }
  return 0;
}

// --------------------------------------------------------------------------
// compare
// --------------------------------------------------------------------------

struct CompareArgs {
  LoaderFlags loader;
  std::vector<std::int64_t> bounds;
  std::string baselines = "label,sample,independence";
  std::string seeds = "5";
  std::string algorithm = "topdown";
  std::string out;
  std::string format = "csv";
  bool pretty = false;
  int threads = 0;
};

struct CompareRow {
  std::int64_t bound;
  std::string method;
  double max_abs, mean_abs, max_q, mean_q;
};

int run_compare(const CompareArgs& args) {
  if (args.bounds.empty()) throw ValidationError("--bounds is required");
  Dataset d = load_dataset(args.loader);
  const int threads = args.threads > 0 ? args.threads : default_threads();

  std::vector<CountedPattern> counted;
  for (auto& g : patterns_over(d, d.all_attributes())) {
    counted.push_back({std::move(g.pattern), g.weight});
  }
  if (counted.empty()) throw ValidationError("dataset has no complete rows");

  std::vector<std::string> methods;
  {
    std::stringstream ss(args.baselines);
    std::string item;
    while (std::getline(ss, item, ',')) methods.push_back(item);
  }
  const auto seeds = parse_seeds(args.seeds);

  std::vector<CompareRow> rows;
  for (const std::int64_t bound : args.bounds) {
    for (const std::string& method : methods) {
      if (method == "label") {
        SearchConfig cfg;
        cfg.size_bound = bound;
        cfg.threads = threads;
        SearchResult r = args.algorithm == "naive" ? naive_search(d, cfg)
                                                   : top_down_search(d, cfg);
        rows.push_back({bound, method, r.report.max_abs_error,
                        *r.report.mean_abs_error, *r.report.max_q_error,
                        *r.report.mean_q_error});
      } else if (method == "sample") {
        const std::int64_t size =
            std::min(sample_size_for_bound(d, bound), d.size());
        double max_abs = 0, mean_abs = 0, max_q = 0, mean_q = 0;
        for (const std::uint64_t seed : seeds) {
          const SampleEstimator se = draw_sample(d, size, seed);
          double run_max_abs = 0, run_sum_abs = 0, run_max_q = 0, run_sum_q = 0;
          for (const auto& cp : counted) {
            const double est = se.estimate(cp.pattern);
            const double err =
                std::abs(static_cast<double>(cp.count) - est);
            run_max_abs = std::max(run_max_abs, err);
            run_sum_abs += err;
            const double q = q_error(est, cp.count);
            run_max_q = std::max(run_max_q, q);
            run_sum_q += q;
          }
          max_abs += run_max_abs;
          mean_abs += run_sum_abs / static_cast<double>(counted.size());
          max_q += run_max_q;
          mean_q += run_sum_q / static_cast<double>(counted.size());
        }
        const auto k = static_cast<double>(seeds.size());
        rows.push_back({bound, method, max_abs / k, mean_abs / k, max_q / k,
                        mean_q / k});
      } else if (method == "independence") {
        Label empty_label = build_label(d, AttrSubset{});
        EvaluationReport r =
            evaluate_counted(empty_label, counted, EvalMode::Exact, threads);
        rows.push_back({bound, method, r.max_abs_error, *r.mean_abs_error,
                        *r.max_q_error, *r.mean_q_error});
      } else {
        throw ValidationError("unknown baseline '" + method + "'");
      }
    }
  }

  std::ostringstream out;
  if (args.format == "csv") {
    out << "bound,method,max_abs,mean_abs,max_q,mean_q\n";
    for (const auto& r : rows) {
      out << r.bound << "," << r.method << "," << r.max_abs << "," << r.mean_abs
          << "," << r.max_q << "," << r.mean_q << "\n";
    }
  } else if (args.format == "json") {
    json arr = json::array();
    for (const auto& r : rows) {
      arr.push_back({{"bound", r.bound}, {"method", r.method},
                     {"max_abs", r.max_abs}, {"mean_abs", r.mean_abs},
                     {"max_q", r.max_q}, {"mean_q", r.mean_q}});
    }
    out << arr.dump(2) << "\n";
  } else {
    throw ValidationError("unknown format '" + args.format + "'");
  }

  if (args.pretty) {
    std::cout << "bound  method        max_abs      mean_abs     max_q        mean_q\n";
    for (const auto& r : rows) {
      std::printf("%-6lld %-13s %-12.4f %-12.4f %-12.4f %-12.4f\n",
                  static_cast<long long>(r.bound), r.method.c_str(), r.max_abs,
                  r.mean_abs, r.max_q, r.mean_q);
    }
  }
  if (args.out.empty()) {
    if (!args.pretty) std::cout << out.str();
  } else {
    write_file(args.out, out.str());
  }
  return 0;
}

// --------------------------------------------------------------------------
// hardness
// --------------------------------------------------------------------------

struct HardnessArgs {
  std::string graph_path;
  int k = 2;
  std::string out_dataset = "reduction.csv";
  std::string out_patterns = "reduction_patterns.json";
};

std::string csv_quote(const std::string& cell) {
  if (cell.find_first_of(",\"\n") == std::string::npos) return cell;
  std::string quoted = "\"";
  for (char c : cell) {
    if (c == '"') quoted += "\"\"";
    else quoted += c;
  }
  return quoted + "\"";
}

std::string dataset_to_csv(const Dataset& d) {
  std::ostringstream out;
  for (const auto& a : d.schema()) out << csv_quote(a.name) << ",";
  out << "count\n";
  for (std::size_t r = 0; r < d.physical_rows(); ++r) {
    for (int a = 0; a < d.attribute_count(); ++a) {
      const std::int32_t code = d.column(a)[r];
      if (code != kMissing) {
        out << csv_quote(d.attribute(a).domain[static_cast<std::size_t>(code)]);
      }
      out << ",";
    }
    out << d.weights()[r] << "\n";
  }
  return out.str();
}

int run_hardness_gen(const HardnessArgs& args) {
  const Graph g = parse_edge_list_file(args.graph_path);
  const ReductionInstance instance = reduce_vertex_cover(g, args.k);

  write_file(args.out_dataset, dataset_to_csv(instance.dataset));

  json patterns = json::array();
  for (const auto& p : instance.patterns) {
    json bindings = json::array();
    for (const auto& b : p.bindings()) {
      const auto& a = instance.dataset.attribute(b.attr);
      bindings.push_back({{"attr", a.name},
                          {"value", a.domain[static_cast<std::size_t>(b.value)]}});
    }
    patterns.push_back(bindings);
  }
  write_file(args.out_patterns, patterns.dump(2) + "\n");

  json meta;
  meta["nodes"] = g.node_count();
  meta["edges"] = g.edge_count();
  meta["k"] = args.k;
  meta["size_bound"] = instance.size_bound;
  meta["error_bound"] = instance.error_bound;
  meta["dataset_size"] = instance.dataset.size();
  meta["dataset_file"] = args.out_dataset;
  meta["patterns_file"] = args.out_patterns;
  std::cout << meta.dump(2) << "\n";
  return 0;
}

int run_hardness_check(const HardnessArgs& args) {
  const Graph g = parse_edge_list_file(args.graph_path);
  const ReductionInstance instance = reduce_vertex_cover(g, args.k);

  SearchConfig cfg;
  cfg.size_bound = instance.size_bound;
  cfg.patterns = instance.patterns;
  const SearchResult opt = brute_force_optimal(instance.dataset, cfg);
  const bool zero_error_label = opt.error == 0.0;
  const bool has_cover = brute_force_vertex_cover(g, args.k);

  json out;
  out["k"] = args.k;
  out["size_bound"] = instance.size_bound;
  out["has_vertex_cover"] = has_cover;
  out["zero_error_label_within_bound"] = zero_error_label;
  out["equivalent"] = has_cover == zero_error_label;
  out["optimal_subset"] = opt.subset.indices();
  out["optimal_error"] = opt.error;
  std::cout << out.dump(2) << "\n";
  return out["equivalent"].get<bool>() ? 0 : 1;
}

}  // namespace

int run(int argc, const char* const* argv) {
  CLI::App app{"pattern-count labels for categorical datasets"};
  app.require_subcommand(1);

  ProfileArgs profile_args;
  auto* profile = app.add_subcommand(
      "profile", "search for the minimal-error label within a size bound");
  add_loader_flags(profile, profile_args.loader);
  profile->add_option("--bound,-b", profile_args.bound, "label size bound B_s");
  profile->add_option("--algorithm", profile_args.algorithm,
                      "topdown|naive|bruteforce");
  profile->add_option("--objective", profile_args.objective,
                      "max-abs|max-q|mean-q");
  profile->add_option("--eval", profile_args.eval, "exact|sorted");
  profile->add_option("--patterns", profile_args.patterns_path,
                      "JSON pattern set (default: all complete rows)");
  profile->add_option("--out,-o", profile_args.out, "label output path");
  profile->add_option("--stats", profile_args.stats_path,
                      "stats output path (default: <out>.stats.json)");
  profile->add_option("--threads", profile_args.threads, "worker threads");

  EstimateArgs estimate_args;
  auto* estimate = app.add_subcommand(
      "estimate", "estimate pattern counts from a label file");
  estimate->add_option("--label,-l", estimate_args.label_path, "label JSON path")
      ->required();
  estimate->add_option("--pattern,-p", estimate_args.pattern_spec,
                       "inline pattern: attr=value,attr=value");
  estimate->add_option("--patterns", estimate_args.patterns_path,
                       "JSON pattern file");
  add_loader_flags(estimate, estimate_args.loader, /*required=*/false);
  estimate->add_flag("--pretty", estimate_args.pretty, "human readable output");

  EvaluateArgs evaluate_args;
  auto* evaluate_cmd = app.add_subcommand(
      "evaluate", "measure a label's error against a dataset");
  evaluate_cmd
      ->add_option("--label,-l", evaluate_args.label_path, "label JSON path")
      ->required();
  add_loader_flags(evaluate_cmd, evaluate_args.loader);
  evaluate_cmd->add_option("--patterns", evaluate_args.patterns_path,
                           "JSON pattern set (default: all complete rows)");
  evaluate_cmd->add_option("--mode", evaluate_args.mode, "exact|sorted");
  evaluate_cmd->add_option("--out,-o", evaluate_args.out,
                           "report path (default: stdout)");
  evaluate_cmd->add_option("--threads", evaluate_args.threads, "worker threads");

  CompareArgs compare_args;
  auto* compare = app.add_subcommand(
      "compare", "compare label, sampling and independence estimators");
  add_loader_flags(compare, compare_args.loader);
  compare->add_option("--bounds", compare_args.bounds, "size bounds to sweep")
      ->required();
  compare->add_option("--baselines", compare_args.baselines,
                      "comma list of label,sample,independence");
  compare->add_option("--seeds", compare_args.seeds,
                      "seed count N (seeds 1..N) or comma list");
  compare->add_option("--algorithm", compare_args.algorithm, "topdown|naive");
  compare->add_option("--out,-o", compare_args.out, "table output path");
  compare->add_option("--format", compare_args.format, "csv|json");
  compare->add_flag("--pretty", compare_args.pretty, "human readable table");
  compare->add_option("--threads", compare_args.threads, "worker threads");

  HardnessArgs hardness_args;
  auto* hardness = app.add_subcommand(
      "hardness", "vertex-cover reduction instance generator");
  hardness->require_subcommand(1);
  auto* gen_cmd = hardness->add_subcommand(
      "gen", "emit the reduction dataset CSV and pattern set");
  gen_cmd->add_option("--graph", hardness_args.graph_path,
                      "edge list file, one 'u v' pair per line, 1-based ids")
      ->required();
  gen_cmd->add_option("--k", hardness_args.k, "cover size, in [2, |V|-1]")
      ->required();
  gen_cmd->add_option("--out-dataset", hardness_args.out_dataset,
                      "dataset CSV path");
  gen_cmd->add_option("--out-patterns", hardness_args.out_patterns,
                      "pattern set JSON path");
  auto* check_cmd = hardness->add_subcommand(
      "check", "run the round-trip: cover exists iff a zero-error label fits");
  check_cmd->add_option("--graph", hardness_args.graph_path, "edge list file")
      ->required();
  check_cmd->add_option("--k", hardness_args.k, "cover size")->required();

  try {
    app.parse(argc, argv);
    if (profile->parsed()) return run_profile(profile_args);
    if (estimate->parsed()) return run_estimate(estimate_args);
    if (evaluate_cmd->parsed()) return run_evaluate(evaluate_args);
    if (compare->parsed()) return run_compare(compare_args);
    if (hardness->parsed()) {
      if (gen_cmd->parsed()) return run_hardness_gen(hardness_args);
      return run_hardness_check(hardness_args);
    }
    return 0;
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const FormatError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace pclabel::cli
