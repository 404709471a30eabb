#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pclabel/dataset.hpp"

namespace pclabel {

enum class EvalMode { Exact, SortedEarlyExit };

struct EvaluationReport {
  std::vector<int> subset;  // label identifier: the attribute subset
  EvalMode mode = EvalMode::Exact;
  double max_abs_error = 0.0;
  std::optional<Pattern> max_abs_witness;
  // Only produced in exact mode.
  std::optional<double> mean_abs_error;
  std::optional<double> max_q_error;
  std::optional<double> mean_q_error;
  std::int64_t patterns_evaluated = 0;
  std::int64_t patterns_skipped = 0;

  std::string to_json(const std::vector<AttributeSchema>& schema) const;
};

// Immutable pattern-count label: subset S, pattern counts PC, value counts VC
// and the dataset cardinality, plus the schema it was built against.
// estimate / abs_error are pure and thread-safe.
class Label {
 public:
  Label() = default;
  Label(AttrSubset subset, std::vector<RestrictionGroup> pc, ValueCounts vc,
        std::int64_t dataset_size, std::vector<AttributeSchema> schema);

  const AttrSubset& subset() const { return subset_; }
  const std::vector<RestrictionGroup>& pc() const { return pc_; }
  const ValueCounts& vc() const { return vc_; }
  std::int64_t dataset_size() const { return dataset_size_; }
  const std::vector<AttributeSchema>& schema() const { return schema_; }
  std::int64_t size() const { return static_cast<std::int64_t>(pc_.size()); }

  // Est(p, l): count of p's restriction to S scaled by the VC fraction of
  // every bound attribute outside S, multiplied in ascending attribute order.
  double estimate(const Pattern& p) const;

  // Count the label can answer for a restriction q = p|_S: an exact PC lookup
  // when q binds all of S, |D| for the empty restriction, and the sum over PC
  // entries extending q otherwise.
  std::int64_t restricted_count(const Pattern& q) const;

  // Throws ValidationError when the label was built against a different
  // schema (attribute names + domains).
  void validate_against(const Dataset& d) const;

  bool operator==(const Label&) const = default;

 private:
  AttrSubset subset_;
  std::vector<RestrictionGroup> pc_;  // sorted by pattern
  ValueCounts vc_;
  std::int64_t dataset_size_ = 0;
  std::vector<AttributeSchema> schema_;
};

Label build_label(const Dataset& d, const AttrSubset& s);

// |P_S| without retaining the pattern map.
std::int64_t label_size(const Dataset& d, const AttrSubset& s);

double abs_error(const Label& l, const Pattern& p, std::int64_t true_count);

// max(true/est, est/true) with est clamped to 1 when it is exactly 0.
double q_error(double est, std::int64_t true_count);

// Patterns paired with their true counts; the unit search and evaluation
// loops share this form so counts are computed once.
struct CountedPattern {
  Pattern pattern;
  std::int64_t count;
};

// Exact mode walks every pattern; sorted-early-exit walks patterns by
// descending count and stops the max-error scan at the first pattern whose
// count is below the running maximum (unsound for over-estimates, opt-in).
// Patterns must all have positive count. threads > 1 parallelizes exact mode
// over fixed chunks with results identical to the sequential run.
EvaluationReport evaluate(const Label& l, const Dataset& d,
                          const std::vector<Pattern>& patterns,
                          EvalMode mode = EvalMode::Exact, int threads = 1);

EvaluationReport evaluate_counted(const Label& l,
                                  std::vector<CountedPattern> patterns,
                                  EvalMode mode, int threads);

// Canonical UTF-8 JSON: sorted keys, arrays ordered by index tuples.
// Serializing the same label twice is byte-identical.
std::string serialize(const Label& l);
Label deserialize(const std::string& bytes);

}  // namespace pclabel
