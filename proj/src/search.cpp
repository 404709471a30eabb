#include "pclabel/search.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <numeric>
#include <set>

#include <json.hpp>

#include "pclabel/error.hpp"

namespace pclabel {

void SearchConfig::validate() const {
  if (size_bound < 1) throw ValidationError("size bound must be at least 1");
  if (eval_mode == EvalMode::SortedEarlyExit && objective != Objective::MaxAbs) {
    throw ValidationError(
        "sorted-early-exit evaluation only supports the max-abs objective");
  }
  if (patterns && patterns->empty()) {
    throw ValidationError("explicit pattern set must not be empty");
  }
  if (threads < 1) throw ValidationError("threads must be at least 1");
}

std::string SearchStats::to_json() const {
  nlohmann::json j;
  j["subsets_generated"] = subsets_generated;
  j["subsets_size_checked"] = subsets_size_checked;
  j["candidates_final"] = candidates_final;
  j["labels_fully_evaluated"] = labels_fully_evaluated;
  j["duplicate_generations"] = duplicate_generations;
  return j.dump(2) + "\n";
}

std::vector<AttrSubset> gen(const AttrSubset& s, int attribute_count) {
  validate_subset(s, attribute_count);
  std::vector<AttrSubset> children;
  for (int j = s.max_index() + 1; j < attribute_count; ++j) {
    children.push_back(s.with(j));
  }
  return children;
}

void remove_parents(std::vector<AttrSubset>& cands, const AttrSubset& c) {
  std::erase_if(cands, [&](const AttrSubset& s) { return s.is_direct_parent_of(c); });
}

namespace {

std::vector<CountedPattern> resolve_patterns(const Dataset& d,
                                             const SearchConfig& cfg) {
  std::vector<CountedPattern> counted;
  if (cfg.patterns) {
    counted.reserve(cfg.patterns->size());
    for (const auto& p : *cfg.patterns) {
      validate_pattern(p, d.schema());
      counted.push_back({p, count_pattern(d, p)});
    }
  } else {
    for (auto& g : patterns_over(d, d.all_attributes())) {
      counted.push_back({std::move(g.pattern), g.weight});
    }
    if (counted.empty()) {
      throw ValidationError("dataset has no complete rows to form a pattern set");
    }
  }
  return counted;
}

double objective_value(const EvaluationReport& report, Objective objective) {
  switch (objective) {
    case Objective::MaxAbs: return report.max_abs_error;
    case Objective::MaxQ: return *report.max_q_error;
    case Objective::MeanQ: return *report.mean_q_error;
  }
  return report.max_abs_error;
}

struct Evaluator {
  const Dataset& d;
  const SearchConfig& cfg;
  std::vector<CountedPattern> patterns;

  Evaluator(const Dataset& dataset, const SearchConfig& config)
      : d(dataset), cfg(config), patterns(resolve_patterns(dataset, config)) {}

  struct Scored {
    Label label;
    EvaluationReport report;
    double error;
  };

  Scored score(const AttrSubset& s) const {
    Label label = build_label(d, s);
    EvaluationReport report =
        evaluate_counted(label, patterns, cfg.eval_mode, cfg.threads);
    const double err = objective_value(report, cfg.objective);
    return {std::move(label), std::move(report), err};
  }
};

// Arg-min tie-break: smaller error, then smaller |PC|, then lexicographically
// smaller index sequence. Candidates arrive in lexicographic order.
struct Best {
  std::optional<AttrSubset> subset;
  Evaluator::Scored scored;

  bool offer(const AttrSubset& s, Evaluator::Scored&& candidate) {
    if (subset) {
      if (candidate.error > scored.error) return false;
      if (candidate.error == scored.error &&
          candidate.label.size() >= scored.label.size()) {
        return false;
      }
    }
    subset = s;
    scored = std::move(candidate);
    return true;
  }
};

SearchResult finish(const Evaluator& ev, Best&& best, SearchStats stats) {
  if (!best.subset) {
    best.offer(AttrSubset{}, ev.score(AttrSubset{}));
    ++stats.labels_fully_evaluated;
  }
  SearchResult result;
  result.subset = *best.subset;
  result.label = std::move(best.scored.label);
  result.report = std::move(best.scored.report);
  result.error = best.scored.error;
  result.stats = stats;
  return result;
}

}  // namespace

SearchResult top_down_search(const Dataset& d, const SearchConfig& cfg) {
  cfg.validate();
  const int n = d.attribute_count();
  if (n < 2) throw ValidationError("search needs at least two attributes");
  Evaluator ev(d, cfg);
  SearchStats stats;

  std::deque<AttrSubset> queue;
  for (auto& s : gen(AttrSubset{}, n)) queue.push_back(std::move(s));

  std::vector<AttrSubset> cands;
  std::set<AttrSubset> generated;
  while (!queue.empty()) {
    const AttrSubset curr = std::move(queue.front());
    queue.pop_front();
    for (auto& c : gen(curr, n)) {
      ++stats.subsets_generated;
      if (!generated.insert(c).second) ++stats.duplicate_generations;
      ++stats.subsets_size_checked;
      if (label_group_count(d, c, cfg.size_bound) <= cfg.size_bound) {
        queue.push_back(c);
        remove_parents(cands, c);
        cands.push_back(std::move(c));
      }
    }
  }

  std::sort(cands.begin(), cands.end());
  stats.candidates_final = static_cast<std::int64_t>(cands.size());

  Best best;
  for (const auto& s : cands) {
    ++stats.labels_fully_evaluated;
    best.offer(s, ev.score(s));
  }
  SearchResult result = finish(ev, std::move(best), stats);
  result.candidates = std::move(cands);
  return result;
}

namespace {

// Lexicographic combinations of {0..n-1} of a given size.
void for_each_subset_of_size(int n, int size,
                             const std::function<void(const AttrSubset&)>& fn) {
  std::vector<int> idx(static_cast<std::size_t>(size));
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    fn(AttrSubset(idx));
    int i = size - 1;
    while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - size + i) --i;
    if (i < 0) break;
    ++idx[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < size; ++j) {
      idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
    }
  }
}

}  // namespace

SearchResult naive_search(const Dataset& d, const SearchConfig& cfg) {
  cfg.validate();
  const int n = d.attribute_count();
  if (n < 2) throw ValidationError("search needs at least two attributes");
  Evaluator ev(d, cfg);
  SearchStats stats;

  Best best;
  // The empty subset always fits the bound (|P_{}| = 1).
  ++stats.subsets_generated;
  ++stats.labels_fully_evaluated;
  best.offer(AttrSubset{}, ev.score(AttrSubset{}));

  for (int size = 2; size <= n; ++size) {
    bool any_within_bound = false;
    for_each_subset_of_size(n, size, [&](const AttrSubset& s) {
      ++stats.subsets_generated;
      ++stats.subsets_size_checked;
      if (label_group_count(d, s, cfg.size_bound) > cfg.size_bound) return;
      any_within_bound = true;
      ++stats.labels_fully_evaluated;
      best.offer(s, ev.score(s));
    });
    // |P_S| only grows along supersets, so a fully oversized level ends it.
    if (!any_within_bound) break;
  }
  stats.candidates_final = stats.labels_fully_evaluated;
  return finish(ev, std::move(best), stats);
}

SearchResult brute_force_optimal(const Dataset& d, const SearchConfig& cfg) {
  cfg.validate();
  const int n = d.attribute_count();
  if (n < 2) throw ValidationError("search needs at least two attributes");
  if (n > 20) throw ValidationError("brute force is guarded to 20 attributes");
  Evaluator ev(d, cfg);
  SearchStats stats;

  // All masks in increasing popcount, lexicographic within a size, skipping
  // singletons (their labels estimate identically to the empty subset on
  // fully observed data and the lattice algorithms never produce them).
  Best best;
  for (int size = 0; size <= n; ++size) {
    if (size == 1) continue;
    for_each_subset_of_size(n, size, [&](const AttrSubset& s) {
      ++stats.subsets_generated;
      ++stats.subsets_size_checked;
      if (label_group_count(d, s, cfg.size_bound) > cfg.size_bound) return;
      ++stats.labels_fully_evaluated;
      best.offer(s, ev.score(s));
    });
  }
  stats.candidates_final = stats.labels_fully_evaluated;
  return finish(ev, std::move(best), stats);
}

}  // namespace pclabel
