#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace pclabel {

// Cell value for a missing entry. All other codes index into the attribute's
// active domain.
inline constexpr std::int32_t kMissing = -1;

enum class AttributeKind { Categorical, BucketizedNumeric };

struct AttributeSchema {
  std::string name;
  int index = 0;
  std::vector<std::string> domain;  // active domain, first-occurrence order
  AttributeKind kind = AttributeKind::Categorical;

  bool operator==(const AttributeSchema&) const = default;
};

// A sparse assignment attribute index -> value code, kept sorted by attribute.
class Pattern {
 public:
  struct Binding {
    int attr;
    std::int32_t value;
    auto operator<=>(const Binding&) const = default;
  };

  Pattern() = default;
  explicit Pattern(std::vector<Binding> bindings);

  static Pattern from_pairs(std::initializer_list<std::pair<int, std::int32_t>> pairs);

  const std::vector<Binding>& bindings() const { return bindings_; }
  bool empty() const { return bindings_.empty(); }
  std::size_t size() const { return bindings_.size(); }

  std::optional<std::int32_t> value_of(int attr) const;
  bool binds(int attr) const { return value_of(attr).has_value(); }

  // True when every binding of q also appears in this pattern.
  bool contains(const Pattern& q) const;

  auto operator<=>(const Pattern&) const = default;

 private:
  std::vector<Binding> bindings_;
};

// Strictly increasing set of attribute indices.
class AttrSubset {
 public:
  AttrSubset() = default;
  explicit AttrSubset(std::vector<int> indices);

  static AttrSubset of(std::initializer_list<int> indices);

  const std::vector<int>& indices() const { return indices_; }
  bool empty() const { return indices_.empty(); }
  std::size_t size() const { return indices_.size(); }
  bool contains(int attr) const;

  // Largest attribute index, -1 for the empty set.
  int max_index() const { return indices_.empty() ? -1 : indices_.back(); }

  AttrSubset with(int attr) const;

  // True when this set is a direct parent of c (subset with |c|-1 elements).
  bool is_direct_parent_of(const AttrSubset& c) const;

  auto operator<=>(const AttrSubset&) const = default;

 private:
  std::vector<int> indices_;
};

// Per attribute, weight of rows holding each value code. Missing cells
// contribute to no value, so a column's total can be below the dataset size.
class ValueCounts {
 public:
  ValueCounts() = default;
  explicit ValueCounts(std::vector<std::vector<std::int64_t>> counts);

  std::int64_t count(int attr, std::int32_t value) const {
    return counts_[static_cast<std::size_t>(attr)][static_cast<std::size_t>(value)];
  }
  std::int64_t total(int attr) const { return totals_[static_cast<std::size_t>(attr)]; }
  const std::vector<std::vector<std::int64_t>>& per_attribute() const { return counts_; }
  std::size_t attribute_count() const { return counts_.size(); }

  bool operator==(const ValueCounts&) const = default;

 private:
  std::vector<std::vector<std::int64_t>> counts_;
  std::vector<std::int64_t> totals_;
};

struct CsvOptions {
  bool has_header = true;
  std::string missing_token;  // cells equal to this become missing
  // Weight column: replicates logical rows without materializing them.
  // Matched by name when there is a header, by 0-based index otherwise.
  std::optional<std::string> weight_column;
};

// Immutable columnar table of categorical codes with optional row weights.
// All read operations are pure and safe to call concurrently.
class Dataset {
 public:
  Dataset() = default;

  // Validating constructor used by the loader, bucketize and generators.
  Dataset(std::vector<AttributeSchema> schema,
          std::vector<std::vector<std::int32_t>> columns,
          std::vector<std::int64_t> weights);

  const std::vector<AttributeSchema>& schema() const { return schema_; }
  const AttributeSchema& attribute(int attr) const {
    return schema_[static_cast<std::size_t>(attr)];
  }
  int attribute_count() const { return static_cast<int>(schema_.size()); }
  int attribute_index(std::string_view name) const;  // -1 when absent

  std::size_t physical_rows() const { return weights_.size(); }
  // |D|: logical row count, i.e. the sum of weights.
  std::int64_t size() const { return total_weight_; }

  const std::vector<std::int32_t>& column(int attr) const {
    return columns_[static_cast<std::size_t>(attr)];
  }
  const std::vector<std::int64_t>& weights() const { return weights_; }

  AttrSubset all_attributes() const;

 private:
  std::vector<AttributeSchema> schema_;
  std::vector<std::vector<std::int32_t>> columns_;  // column-major codes
  std::vector<std::int64_t> weights_;
  std::int64_t total_weight_ = 0;
};

Dataset load_csv(std::istream& source, const CsvOptions& options = {});
Dataset load_csv_file(const std::string& path, const CsvOptions& options = {});

enum class BucketStrategy { EqualWidth, EqualFrequency };

// Replaces a numeric-labelled attribute by interval buckets. Bins that end up
// empty are dropped from the domain; requesting more bins than distinct
// values silently reduces the bin count.
Dataset bucketize(const Dataset& d, int attr, int num_bins, BucketStrategy strategy);

// c_D(p): weight of rows whose bound attributes are all non-missing and equal.
std::int64_t count_pattern(const Dataset& d, const Pattern& p);

ValueCounts value_counts(const Dataset& d);

// One pattern per distinct restriction of a row to `s`, with its group weight
// and the number of attributes the restriction binds (missing cells drop out
// of the key). Sorted by binding list. Shared by patterns_over and labels.
struct RestrictionGroup {
  Pattern pattern;
  std::int64_t weight;

  bool operator==(const RestrictionGroup&) const = default;
};
std::vector<RestrictionGroup> restriction_groups(const Dataset& d, const AttrSubset& s);

// Full patterns over s: exactly the p with Attr(p) = s and c_D(p) > 0, each
// with its count. Rows missing any attribute of s contribute nothing.
std::vector<RestrictionGroup> patterns_over(const Dataset& d, const AttrSubset& s);

// Minimum number of bound attributes for a restriction to enter a label's PC:
// min(2, |s|). Sub-pattern groups binding a single attribute duplicate what VC
// already stores and stay out of PC for |s| >= 2.
std::size_t label_min_bound(const AttrSubset& s);

// Distinct-restriction count filtered the same way a label's PC is, abandoning
// the scan once the count exceeds `cap` (returns cap + 1 in that case).
std::int64_t label_group_count(const Dataset& d, const AttrSubset& s,
                               std::int64_t cap);

Pattern restrict(const Pattern& p, const AttrSubset& s);

// Throws ValidationError when p references an unknown attribute or value.
void validate_pattern(const Pattern& p, const std::vector<AttributeSchema>& schema);
void validate_subset(const AttrSubset& s, int attribute_count);

}  // namespace pclabel
