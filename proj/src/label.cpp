#include "pclabel/label.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <json.hpp>

#include "pclabel/error.hpp"
#include "pclabel/parallel.hpp"

namespace pclabel {

using nlohmann::json;

Label::Label(AttrSubset subset, std::vector<RestrictionGroup> pc, ValueCounts vc,
             std::int64_t dataset_size, std::vector<AttributeSchema> schema)
    : subset_(std::move(subset)), pc_(std::move(pc)), vc_(std::move(vc)),
      dataset_size_(dataset_size), schema_(std::move(schema)) {
  validate_subset(subset_, static_cast<int>(schema_.size()));
  if (vc_.attribute_count() != schema_.size()) {
    throw ValidationError("label VC must cover every schema attribute");
  }
  for (const auto& g : pc_) {
    if (g.weight <= 0) throw ValidationError("label PC counts must be positive");
    validate_pattern(g.pattern, schema_);
  }
  if (!std::is_sorted(pc_.begin(), pc_.end(), [](const auto& x, const auto& y) {
        return x.pattern < y.pattern;
      })) {
    throw ValidationError("label PC must be sorted by pattern");
  }
}

Label build_label(const Dataset& d, const AttrSubset& s) {
  validate_subset(s, d.attribute_count());
  auto groups = restriction_groups(d, s);
  const std::size_t min_bound = label_min_bound(s);
  std::erase_if(groups, [&](const RestrictionGroup& g) {
    return g.pattern.size() < min_bound;
  });
  return Label(s, std::move(groups), value_counts(d), d.size(), d.schema());
}

std::int64_t label_size(const Dataset& d, const AttrSubset& s) {
  return label_group_count(d, s, std::numeric_limits<std::int64_t>::max() - 1);
}

std::int64_t Label::restricted_count(const Pattern& q) const {
  if (q.empty()) return dataset_size_;
  if (q.size() == subset_.size()) {
    auto it = std::lower_bound(pc_.begin(), pc_.end(), q,
                               [](const RestrictionGroup& g, const Pattern& p) {
                                 return g.pattern < p;
                               });
    if (it != pc_.end() && it->pattern == q) return it->weight;
    return 0;
  }
  std::int64_t sum = 0;
  for (const auto& g : pc_) {
    if (g.pattern.contains(q)) sum += g.weight;
  }
  return sum;
}

double Label::estimate(const Pattern& p) const {
  validate_pattern(p, schema_);
  const Pattern q = restrict(p, subset_);
  double est = static_cast<double>(restricted_count(q));
  for (const auto& b : p.bindings()) {
    if (subset_.contains(b.attr)) continue;
    est *= static_cast<double>(vc_.count(b.attr, b.value)) /
           static_cast<double>(vc_.total(b.attr));
  }
  return est;
}

void Label::validate_against(const Dataset& d) const {
  if (d.schema().size() != schema_.size()) {
    throw ValidationError("label schema fingerprint mismatch: attribute count");
  }
  for (std::size_t i = 0; i < schema_.size(); ++i) {
    if (d.schema()[i].name != schema_[i].name ||
        d.schema()[i].domain != schema_[i].domain) {
      throw ValidationError("label schema fingerprint mismatch at attribute '" +
                            schema_[i].name + "'");
    }
  }
}

double abs_error(const Label& l, const Pattern& p, std::int64_t true_count) {
  return std::abs(static_cast<double>(true_count) - l.estimate(p));
}

double q_error(double est, std::int64_t true_count) {
  if (true_count < 1) throw ValidationError("q_error requires a positive true count");
  if (est == 0.0) est = 1.0;
  const double t = static_cast<double>(true_count);
  return std::max(t / est, est / t);
}

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

namespace {

// Canonical pattern order: count descending, then pattern ascending. Ties in
// the max scan resolve to the first pattern in this order.
void sort_canonical(std::vector<CountedPattern>& patterns) {
  std::sort(patterns.begin(), patterns.end(),
            [](const CountedPattern& x, const CountedPattern& y) {
              if (x.count != y.count) return x.count > y.count;
              return x.pattern < y.pattern;
            });
}

struct ChunkStats {
  double max_abs = -1.0;
  std::size_t arg_abs = 0;
  double sum_abs = 0.0;
  double max_q = 0.0;
  double sum_q = 0.0;
};

}  // namespace

EvaluationReport evaluate_counted(const Label& l,
                                  std::vector<CountedPattern> patterns,
                                  EvalMode mode, int threads) {
  if (patterns.empty()) throw ValidationError("evaluate: empty pattern set");
  for (const auto& cp : patterns) {
    if (cp.count <= 0) {
      throw ValidationError("evaluate: every pattern must have a positive count");
    }
  }
  sort_canonical(patterns);

  EvaluationReport report;
  report.subset = l.subset().indices();
  report.mode = mode;

  if (mode == EvalMode::SortedEarlyExit) {
    double max_abs = 0.0;
    std::optional<std::size_t> witness;
    std::size_t i = 0;
    for (; i < patterns.size(); ++i) {
      if (static_cast<double>(patterns[i].count) < max_abs) break;
      const double err = std::abs(static_cast<double>(patterns[i].count) -
                                  l.estimate(patterns[i].pattern));
      if (!witness || err > max_abs) {
        max_abs = err;
        witness = i;
      }
    }
    report.max_abs_error = max_abs;
    if (witness) report.max_abs_witness = patterns[*witness].pattern;
    report.patterns_evaluated = static_cast<std::int64_t>(i);
    report.patterns_skipped = static_cast<std::int64_t>(patterns.size() - i);
    return report;
  }

  const std::size_t n = patterns.size();
  constexpr std::size_t kChunk = 1024;
  const std::size_t chunk_count = (n + kChunk - 1) / kChunk;
  std::vector<ChunkStats> chunks(chunk_count);
  parallel_chunks(n, kChunk, threads, [&](std::size_t c, std::size_t b, std::size_t e) {
    ChunkStats st;
    for (std::size_t i = b; i < e; ++i) {
      const double est = l.estimate(patterns[i].pattern);
      const double err = std::abs(static_cast<double>(patterns[i].count) - est);
      if (err > st.max_abs) {
        st.max_abs = err;
        st.arg_abs = i;
      }
      st.sum_abs += err;
      const double q = q_error(est, patterns[i].count);
      st.max_q = std::max(st.max_q, q);
      st.sum_q += q;
    }
    chunks[c] = st;
  });

  ChunkStats total;
  for (const auto& st : chunks) {
    if (st.max_abs > total.max_abs) {
      total.max_abs = st.max_abs;
      total.arg_abs = st.arg_abs;
    }
    total.sum_abs += st.sum_abs;
    total.max_q = std::max(total.max_q, st.max_q);
    total.sum_q += st.sum_q;
  }

  report.max_abs_error = total.max_abs;
  report.max_abs_witness = patterns[total.arg_abs].pattern;
  report.mean_abs_error = total.sum_abs / static_cast<double>(n);
  report.max_q_error = total.max_q;
  report.mean_q_error = total.sum_q / static_cast<double>(n);
  report.patterns_evaluated = static_cast<std::int64_t>(n);
  report.patterns_skipped = 0;
  return report;
}

EvaluationReport evaluate(const Label& l, const Dataset& d,
                          const std::vector<Pattern>& patterns, EvalMode mode,
                          int threads) {
  l.validate_against(d);
  if (patterns.empty()) throw ValidationError("evaluate: empty pattern set");
  std::vector<CountedPattern> counted;
  counted.reserve(patterns.size());
  for (const auto& p : patterns) {
    validate_pattern(p, d.schema());
    counted.push_back({p, count_pattern(d, p)});
  }
  return evaluate_counted(l, std::move(counted), mode, threads);
}

// ---------------------------------------------------------------------------
// Serialization
// ---------------------------------------------------------------------------

namespace {
constexpr int kFormatVersion = 1;
}  // namespace

std::string EvaluationReport::to_json(const std::vector<AttributeSchema>& schema) const {
  json j;
  j["subset"] = subset;
  json names = json::array();
  for (int a : subset) names.push_back(schema[static_cast<std::size_t>(a)].name);
  j["subset_names"] = names;
  j["mode"] = mode == EvalMode::Exact ? "exact" : "sorted-early-exit";
  j["max_abs_error"] = max_abs_error;
  if (max_abs_witness) {
    json w = json::array();
    for (const auto& b : max_abs_witness->bindings()) {
      w.push_back({{"attr", schema[static_cast<std::size_t>(b.attr)].name},
                   {"value", schema[static_cast<std::size_t>(b.attr)]
                                 .domain[static_cast<std::size_t>(b.value)]}});
    }
    j["max_abs_witness"] = w;
  }
  if (mean_abs_error) j["mean_abs_error"] = *mean_abs_error;
  if (max_q_error) j["max_q_error"] = *max_q_error;
  if (mean_q_error) j["mean_q_error"] = *mean_q_error;
  j["patterns_evaluated"] = patterns_evaluated;
  j["patterns_skipped"] = patterns_skipped;
  return j.dump(2) + "\n";
}

std::string serialize(const Label& l) {
  json j;
  j["format_version"] = kFormatVersion;
  j["dataset_size"] = l.dataset_size();
  json attrs = json::array();
  for (const auto& a : l.schema()) {
    attrs.push_back({{"name", a.name}, {"domain", a.domain}});
  }
  j["attributes"] = attrs;
  j["subset"] = l.subset().indices();
  json vc = json::array();
  for (std::size_t a = 0; a < l.vc().attribute_count(); ++a) {
    const auto& per_value = l.vc().per_attribute()[a];
    for (std::size_t v = 0; v < per_value.size(); ++v) {
      vc.push_back(json::array({static_cast<int>(a), static_cast<int>(v),
                                per_value[v]}));
    }
  }
  j["vc"] = vc;
  json pc = json::array();
  for (const auto& g : l.pc()) {
    json entry = json::array();
    for (const auto& b : g.pattern.bindings()) {
      entry.push_back(json::array({b.attr, b.value}));
    }
    entry.push_back(g.weight);
    pc.push_back(entry);
  }
  j["pc"] = pc;
  return j.dump();
}

Label deserialize(const std::string& bytes) {
  json j;
  try {
    j = json::parse(bytes);
  } catch (const json::parse_error& e) {
    throw FormatError(std::string("label file is not valid JSON: ") + e.what());
  }
  try {
    if (!j.is_object() || !j.contains("format_version")) {
      throw FormatError("label file missing format_version");
    }
    if (j.at("format_version").get<int>() != kFormatVersion) {
      throw FormatError("unsupported label format_version");
    }
    std::vector<AttributeSchema> schema;
    for (const auto& a : j.at("attributes")) {
      AttributeSchema s;
      s.name = a.at("name").get<std::string>();
      s.domain = a.at("domain").get<std::vector<std::string>>();
      s.index = static_cast<int>(schema.size());
      schema.push_back(std::move(s));
    }
    AttrSubset subset(j.at("subset").get<std::vector<int>>());
    std::vector<std::vector<std::int64_t>> counts(schema.size());
    for (std::size_t a = 0; a < schema.size(); ++a) {
      counts[a].assign(schema[a].domain.size(), 0);
    }
    for (const auto& row : j.at("vc")) {
      const int a = row.at(0).get<int>();
      const int v = row.at(1).get<int>();
      if (a < 0 || a >= static_cast<int>(schema.size()) || v < 0 ||
          v >= static_cast<int>(schema[static_cast<std::size_t>(a)].domain.size())) {
        throw FormatError("vc entry out of range");
      }
      counts[static_cast<std::size_t>(a)][static_cast<std::size_t>(v)] =
          row.at(2).get<std::int64_t>();
    }
    std::vector<RestrictionGroup> pc;
    for (const auto& entry : j.at("pc")) {
      if (!entry.is_array() || entry.empty()) throw FormatError("bad pc entry");
      std::vector<Pattern::Binding> bindings;
      for (std::size_t i = 0; i + 1 < entry.size(); ++i) {
        bindings.push_back({entry[i].at(0).get<int>(),
                            entry[i].at(1).get<std::int32_t>()});
      }
      pc.push_back({Pattern(std::move(bindings)),
                    entry.back().get<std::int64_t>()});
    }
    return Label(std::move(subset), std::move(pc), ValueCounts(std::move(counts)),
                 j.at("dataset_size").get<std::int64_t>(), std::move(schema));
  } catch (const json::exception& e) {
    throw FormatError(std::string("malformed label file: ") + e.what());
  }
}

}  // namespace pclabel
