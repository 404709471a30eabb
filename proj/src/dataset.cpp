#include "pclabel/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <istream>
#include <limits>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "pclabel/error.hpp"
#include "pclabel/kernels.hpp"

namespace pclabel {

// ---------------------------------------------------------------------------
// Pattern / AttrSubset / ValueCounts
// ---------------------------------------------------------------------------

Pattern::Pattern(std::vector<Binding> bindings) : bindings_(std::move(bindings)) {
  std::sort(bindings_.begin(), bindings_.end());
  for (std::size_t i = 1; i < bindings_.size(); ++i) {
    if (bindings_[i - 1].attr == bindings_[i].attr) {
      throw ValidationError("pattern binds attribute " +
                            std::to_string(bindings_[i].attr) + " twice");
    }
  }
}

Pattern Pattern::from_pairs(std::initializer_list<std::pair<int, std::int32_t>> pairs) {
  std::vector<Binding> b;
  b.reserve(pairs.size());
  for (const auto& [attr, value] : pairs) b.push_back({attr, value});
  return Pattern(std::move(b));
}

std::optional<std::int32_t> Pattern::value_of(int attr) const {
  for (const auto& b : bindings_) {
    if (b.attr == attr) return b.value;
    if (b.attr > attr) break;
  }
  return std::nullopt;
}

bool Pattern::contains(const Pattern& q) const {
  auto it = bindings_.begin();
  for (const auto& b : q.bindings_) {
    while (it != bindings_.end() && it->attr < b.attr) ++it;
    if (it == bindings_.end() || it->attr != b.attr || it->value != b.value) return false;
  }
  return true;
}

AttrSubset::AttrSubset(std::vector<int> indices) : indices_(std::move(indices)) {
  for (std::size_t i = 0; i < indices_.size(); ++i) {
    if (indices_[i] < 0) throw ValidationError("negative attribute index");
    if (i > 0 && indices_[i] <= indices_[i - 1]) {
      throw ValidationError("attribute subset must be strictly increasing");
    }
  }
}

AttrSubset AttrSubset::of(std::initializer_list<int> indices) {
  return AttrSubset(std::vector<int>(indices));
}

bool AttrSubset::contains(int attr) const {
  return std::binary_search(indices_.begin(), indices_.end(), attr);
}

AttrSubset AttrSubset::with(int attr) const {
  std::vector<int> next = indices_;
  next.insert(std::upper_bound(next.begin(), next.end(), attr), attr);
  return AttrSubset(std::move(next));
}

bool AttrSubset::is_direct_parent_of(const AttrSubset& c) const {
  if (indices_.size() + 1 != c.indices_.size()) return false;
  return std::includes(c.indices_.begin(), c.indices_.end(), indices_.begin(),
                       indices_.end());
}

ValueCounts::ValueCounts(std::vector<std::vector<std::int64_t>> counts)
    : counts_(std::move(counts)) {
  totals_.reserve(counts_.size());
  for (const auto& per_value : counts_) {
    totals_.push_back(std::accumulate(per_value.begin(), per_value.end(),
                                      std::int64_t{0}));
  }
}

void validate_subset(const AttrSubset& s, int attribute_count) {
  if (!s.empty() && s.max_index() >= attribute_count) {
    throw ValidationError("attribute index " + std::to_string(s.max_index()) +
                          " out of range for schema of " +
                          std::to_string(attribute_count) + " attributes");
  }
}

void validate_pattern(const Pattern& p, const std::vector<AttributeSchema>& schema) {
  for (const auto& b : p.bindings()) {
    if (b.attr < 0 || b.attr >= static_cast<int>(schema.size())) {
      throw ValidationError("pattern references unknown attribute index " +
                            std::to_string(b.attr));
    }
    const auto& dom = schema[static_cast<std::size_t>(b.attr)].domain;
    if (b.value < 0 || b.value >= static_cast<std::int32_t>(dom.size())) {
      throw ValidationError("pattern value code " + std::to_string(b.value) +
                            " out of range for attribute '" +
                            schema[static_cast<std::size_t>(b.attr)].name + "'");
    }
  }
}

// ---------------------------------------------------------------------------
// Dataset
// ---------------------------------------------------------------------------

Dataset::Dataset(std::vector<AttributeSchema> schema,
                 std::vector<std::vector<std::int32_t>> columns,
                 std::vector<std::int64_t> weights)
    : schema_(std::move(schema)), columns_(std::move(columns)),
      weights_(std::move(weights)) {
  if (schema_.size() != columns_.size()) {
    throw ValidationError("schema/column arity mismatch");
  }
  const std::size_t rows = weights_.size();
  for (std::size_t a = 0; a < columns_.size(); ++a) {
    if (columns_[a].size() != rows) throw ValidationError("column length mismatch");
    if (schema_[a].index != static_cast<int>(a)) {
      throw ValidationError("schema index mismatch for attribute '" +
                            schema_[a].name + "'");
    }
    const auto dom_size = static_cast<std::int32_t>(schema_[a].domain.size());
    std::vector<bool> seen(schema_[a].domain.size(), false);
    for (std::int32_t code : columns_[a]) {
      if (code == kMissing) continue;
      if (code < 0 || code >= dom_size) {
        throw ValidationError("cell code out of domain for attribute '" +
                              schema_[a].name + "'");
      }
      seen[static_cast<std::size_t>(code)] = true;
    }
    if (std::find(seen.begin(), seen.end(), false) != seen.end()) {
      throw ValidationError("inactive domain value in attribute '" +
                            schema_[a].name + "'");
    }
  }
  for (std::int64_t w : weights_) {
    if (w <= 0) throw ValidationError("row weights must be positive");
    total_weight_ += w;
  }
}

int Dataset::attribute_index(std::string_view name) const {
  for (const auto& a : schema_) {
    if (a.name == name) return a.index;
  }
  return -1;
}

AttrSubset Dataset::all_attributes() const {
  std::vector<int> all(schema_.size());
  std::iota(all.begin(), all.end(), 0);
  return AttrSubset(std::move(all));
}

// ---------------------------------------------------------------------------
// CSV loading
// ---------------------------------------------------------------------------

namespace {

// RFC-4180 style: quoted fields may contain commas, newlines and doubled
// quotes. Returns false at end of input.
bool read_record(std::istream& in, std::vector<std::string>& fields) {
  fields.clear();
  std::string field;
  bool in_quotes = false;
  bool any = false;
  int ch;
  while ((ch = in.get()) != std::char_traits<char>::eof()) {
    any = true;
    const char c = static_cast<char>(ch);
    if (in_quotes) {
      if (c == '"') {
        if (in.peek() == '"') {
          field.push_back('"');
          in.get();
        } else {
          in_quotes = false;
        }
      } else {
        field.push_back(c);
      }
      continue;
    }
    if (c == '"') {
      in_quotes = true;
    } else if (c == ',') {
      fields.push_back(std::move(field));
      field.clear();
    } else if (c == '\n') {
      break;
    } else if (c == '\r') {
      if (in.peek() == '\n') in.get();
      break;
    } else {
      field.push_back(c);
    }
  }
  if (!any) return false;
  fields.push_back(std::move(field));
  return true;
}

std::int64_t parse_weight(const std::string& text, std::size_t row_number) {
  std::int64_t value = 0;
  const char* first = text.data();
  const char* last = first + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last || value <= 0) {
    throw ParseError("row " + std::to_string(row_number) +
                     ": weight column must hold a positive integer, got '" +
                     text + "'");
  }
  return value;
}

}  // namespace

Dataset load_csv(std::istream& source, const CsvOptions& options) {
  std::vector<std::string> fields;
  std::vector<std::string> names;
  std::size_t row_number = 0;

  if (options.has_header) {
    if (!read_record(source, fields)) throw ParseError("empty input");
    ++row_number;
    names = fields;
  }

  std::vector<std::string> first_row;
  if (names.empty()) {
    if (!read_record(source, first_row)) throw ParseError("empty input");
    for (std::size_t i = 0; i < first_row.size(); ++i) {
      names.push_back("col" + std::to_string(i));
    }
  }

  int weight_col = -1;
  if (options.weight_column) {
    if (options.has_header) {
      for (std::size_t i = 0; i < names.size(); ++i) {
        if (names[i] == *options.weight_column) weight_col = static_cast<int>(i);
      }
      if (weight_col < 0) {
        throw ValidationError("weight column '" + *options.weight_column +
                              "' not found in header");
      }
    } else {
      int idx = -1;
      auto [ptr, ec] = std::from_chars(
          options.weight_column->data(),
          options.weight_column->data() + options.weight_column->size(), idx);
      if (ec != std::errc{} || ptr != options.weight_column->data() +
                                          options.weight_column->size() ||
          idx < 0 || idx >= static_cast<int>(names.size())) {
        throw ValidationError(
            "without a header the weight column must be a valid 0-based index");
      }
      weight_col = idx;
    }
  }

  const std::size_t arity = names.size();
  std::vector<AttributeSchema> schema;
  std::vector<int> col_of_attr;  // csv column of each schema attribute
  for (std::size_t i = 0; i < arity; ++i) {
    if (static_cast<int>(i) == weight_col) continue;
    AttributeSchema a;
    a.name = names[i];
    a.index = static_cast<int>(schema.size());
    schema.push_back(std::move(a));
    col_of_attr.push_back(static_cast<int>(i));
  }
  for (std::size_t i = 0; i < schema.size(); ++i) {
    for (std::size_t j = i + 1; j < schema.size(); ++j) {
      if (schema[i].name == schema[j].name) {
        throw ParseError("duplicate attribute name '" + schema[i].name + "'");
      }
    }
  }

  std::vector<std::unordered_map<std::string, std::int32_t>> code_of(schema.size());
  std::vector<std::vector<std::int32_t>> columns(schema.size());
  std::vector<std::int64_t> weights;

  auto ingest = [&](const std::vector<std::string>& record) {
    ++row_number;
    if (record.size() != arity) {
      throw ParseError("row " + std::to_string(row_number) + ": expected " +
                       std::to_string(arity) + " fields, got " +
                       std::to_string(record.size()));
    }
    std::int64_t w = 1;
    if (weight_col >= 0) {
      w = parse_weight(record[static_cast<std::size_t>(weight_col)], row_number);
    }
    weights.push_back(w);
    for (std::size_t a = 0; a < schema.size(); ++a) {
      const std::string& cell = record[static_cast<std::size_t>(col_of_attr[a])];
      if (cell == options.missing_token) {
        columns[a].push_back(kMissing);
        continue;
      }
      auto [it, inserted] = code_of[a].emplace(
          cell, static_cast<std::int32_t>(schema[a].domain.size()));
      if (inserted) schema[a].domain.push_back(cell);
      columns[a].push_back(it->second);
    }
  };

  if (!first_row.empty()) ingest(first_row);
  while (read_record(source, fields)) ingest(fields);

  if (weights.empty()) throw ParseError("input has no data rows");
  for (const auto& a : schema) {
    if (a.domain.empty()) {
      throw ParseError("attribute '" + a.name +
                       "' has an empty active domain (every cell is missing)");
    }
  }
  return Dataset(std::move(schema), std::move(columns), std::move(weights));
}

Dataset load_csv_file(const std::string& path, const CsvOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  return load_csv(in, options);
}

// ---------------------------------------------------------------------------
// Bucketize
// ---------------------------------------------------------------------------

namespace {

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string interval_label(double lo, double hi, bool closed) {
  return "[" + format_number(lo) + "," + format_number(hi) + (closed ? "]" : ")");
}

}  // namespace

Dataset bucketize(const Dataset& d, int attr, int num_bins, BucketStrategy strategy) {
  if (attr < 0 || attr >= d.attribute_count()) {
    throw ValidationError("bucketize: attribute index out of range");
  }
  if (num_bins < 1) throw ValidationError("bucketize: num_bins must be positive");

  const AttributeSchema& a = d.attribute(attr);
  std::vector<double> numeric(a.domain.size());
  for (std::size_t i = 0; i < a.domain.size(); ++i) {
    const std::string& label = a.domain[i];
    char* end = nullptr;
    const double v = std::strtod(label.c_str(), &end);
    if (end != label.c_str() + label.size() || label.empty() || !std::isfinite(v)) {
      throw ValidationError("bucketize: value '" + label + "' of attribute '" +
                            a.name + "' is not a finite number");
    }
    numeric[i] = v;
  }

  // Distinct values ascending, with their weights.
  std::vector<std::size_t> order(numeric.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t x, std::size_t y) { return numeric[x] < numeric[y]; });

  std::vector<std::int64_t> value_weight(a.domain.size(), 0);
  const auto& col = d.column(attr);
  const auto& w = d.weights();
  for (std::size_t r = 0; r < col.size(); ++r) {
    if (col[r] != kMissing) value_weight[static_cast<std::size_t>(col[r])] += w[r];
  }

  const int distinct = static_cast<int>(order.size());
  const int bins = std::min(num_bins, distinct);

  // bucket_of[i]: bucket index of old code i.
  std::vector<int> bucket_of(a.domain.size(), -1);
  std::vector<std::pair<double, double>> bounds;  // per bucket, may stay empty

  if (strategy == BucketStrategy::EqualWidth) {
    const double lo = numeric[order.front()];
    const double hi = numeric[order.back()];
    if (lo == hi) {
      bounds.emplace_back(lo, hi);
      for (std::size_t i = 0; i < bucket_of.size(); ++i) bucket_of[i] = 0;
    } else {
      const double width = (hi - lo) / bins;
      for (int b = 0; b < bins; ++b) {
        bounds.emplace_back(lo + b * width, b + 1 == bins ? hi : lo + (b + 1) * width);
      }
      for (std::size_t i = 0; i < numeric.size(); ++i) {
        int b = static_cast<int>(std::floor((numeric[i] - lo) / width));
        bucket_of[i] = std::clamp(b, 0, bins - 1);
      }
    }
  } else {
    // Equal frequency over the weighted value multiset. A bucket closes as
    // soon as it reaches its share, so equal values never straddle a boundary
    // and earlier buckets take the surplus.
    std::vector<std::int64_t> sorted_weight;
    sorted_weight.reserve(order.size());
    std::int64_t remaining = 0;
    for (std::size_t idx : order) {
      sorted_weight.push_back(value_weight[idx]);
      remaining += value_weight[idx];
    }
    int i = 0;
    int bins_left = bins;
    while (bins_left > 0) {
      const int start = i;
      if (distinct - i == bins_left) {
        // one distinct value per remaining bucket
        ++i;
      } else {
        const double target = static_cast<double>(remaining) / bins_left;
        std::int64_t acc = 0;
        while (i < distinct && (acc < target && distinct - i > bins_left - 1)) {
          acc += sorted_weight[static_cast<std::size_t>(i)];
          ++i;
        }
      }
      const int bucket = static_cast<int>(bounds.size());
      for (int j = start; j < i; ++j) {
        bucket_of[order[static_cast<std::size_t>(j)]] = bucket;
        remaining -= sorted_weight[static_cast<std::size_t>(j)];
      }
      bounds.emplace_back(numeric[order[static_cast<std::size_t>(start)]],
                          i < distinct ? numeric[order[static_cast<std::size_t>(i)]]
                                       : numeric[order.back()]);
      --bins_left;
    }
  }

  // Drop unoccupied buckets so the active-domain invariant survives.
  std::vector<std::int64_t> bucket_weight(bounds.size(), 0);
  for (std::size_t i = 0; i < bucket_of.size(); ++i) {
    bucket_weight[static_cast<std::size_t>(bucket_of[i])] += value_weight[i];
  }
  std::vector<int> dense(bounds.size(), -1);
  std::vector<std::string> labels;
  int last_occupied = -1;
  for (std::size_t b = 0; b < bounds.size(); ++b) {
    if (bucket_weight[b] > 0) last_occupied = static_cast<int>(b);
  }
  for (std::size_t b = 0; b < bounds.size(); ++b) {
    if (bucket_weight[b] == 0) continue;
    dense[b] = static_cast<int>(labels.size());
    const bool closed = static_cast<int>(b) == last_occupied;
    labels.push_back(interval_label(bounds[b].first, bounds[b].second, closed));
  }

  std::vector<AttributeSchema> schema = d.schema();
  schema[static_cast<std::size_t>(attr)].domain = labels;
  schema[static_cast<std::size_t>(attr)].kind = AttributeKind::BucketizedNumeric;

  std::vector<std::vector<std::int32_t>> columns;
  columns.reserve(static_cast<std::size_t>(d.attribute_count()));
  for (int c = 0; c < d.attribute_count(); ++c) columns.push_back(d.column(c));
  auto& target = columns[static_cast<std::size_t>(attr)];
  for (auto& code : target) {
    if (code == kMissing) continue;
    code = dense[static_cast<std::size_t>(bucket_of[static_cast<std::size_t>(code)])];
  }
  return Dataset(std::move(schema), std::move(columns), d.weights());
}

// ---------------------------------------------------------------------------
// Counting
// ---------------------------------------------------------------------------

std::int64_t count_pattern(const Dataset& d, const Pattern& p) {
  validate_pattern(p, d.schema());
  if (p.empty()) return d.size();
  const auto& backend = kernels::active_backend();
  const std::size_t n = d.physical_rows();
  std::vector<std::uint8_t> mask(n, 1);
  for (const auto& b : p.bindings()) {
    backend.eq_mask_and(d.column(b.attr).data(), n, b.value, mask.data());
  }
  return backend.masked_weight_sum(mask.data(), d.weights().data(), n);
}

ValueCounts value_counts(const Dataset& d) {
  std::vector<std::vector<std::int64_t>> counts;
  counts.reserve(static_cast<std::size_t>(d.attribute_count()));
  const auto& w = d.weights();
  for (int a = 0; a < d.attribute_count(); ++a) {
    std::vector<std::int64_t> per_value(d.attribute(a).domain.size(), 0);
    const auto& col = d.column(a);
    for (std::size_t r = 0; r < col.size(); ++r) {
      if (col[r] != kMissing) per_value[static_cast<std::size_t>(col[r])] += w[r];
    }
    counts.push_back(std::move(per_value));
  }
  return ValueCounts(std::move(counts));
}

// ---------------------------------------------------------------------------
// Group-by over restrictions
// ---------------------------------------------------------------------------

namespace {

// Mixed-radix keys fit in 64 bits when prod(|Dom|+1) does.
bool radix_fits_u64(const Dataset& d, const AttrSubset& s) {
  unsigned __int128 prod = 1;
  for (int a : s.indices()) {
    prod *= static_cast<unsigned __int128>(d.attribute(a).domain.size() + 1);
    if (prod > std::numeric_limits<std::uint64_t>::max()) return false;
  }
  return true;
}

Pattern decode_key(std::uint64_t key, const Dataset& d, const AttrSubset& s) {
  std::vector<Pattern::Binding> bindings;
  for (auto it = s.indices().rbegin(); it != s.indices().rend(); ++it) {
    const auto radix =
        static_cast<std::uint64_t>(d.attribute(*it).domain.size() + 1);
    const auto digit = static_cast<std::int32_t>(key % radix);
    key /= radix;
    if (digit != 0) bindings.push_back({*it, digit - 1});
  }
  std::reverse(bindings.begin(), bindings.end());
  return Pattern(std::move(bindings));
}

std::vector<std::uint64_t> pack_keys(const Dataset& d, const AttrSubset& s) {
  const auto& backend = kernels::active_backend();
  const std::size_t n = d.physical_rows();
  std::vector<std::uint64_t> keys(n, 0);
  for (int a : s.indices()) {
    backend.pack_mixed_radix(
        keys.data(), d.column(a).data(), n,
        static_cast<std::uint64_t>(d.attribute(a).domain.size() + 1));
  }
  return keys;
}

struct WideKeyHash {
  std::size_t operator()(const std::vector<std::int32_t>& key) const {
    std::uint64_t h = 1469598103934665603ull;
    for (std::int32_t v : key) {
      h ^= static_cast<std::uint64_t>(static_cast<std::uint32_t>(v));
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }
};

std::vector<RestrictionGroup> groups_wide(const Dataset& d, const AttrSubset& s) {
  const std::size_t n = d.physical_rows();
  const auto& w = d.weights();
  std::unordered_map<std::vector<std::int32_t>, std::int64_t, WideKeyHash> agg;
  std::vector<std::int32_t> key(s.size());
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t i = 0; i < s.size(); ++i) {
      key[i] = d.column(s.indices()[i])[r];
    }
    agg[key] += w[r];
  }
  std::vector<RestrictionGroup> out;
  out.reserve(agg.size());
  for (auto& [k, weight] : agg) {
    std::vector<Pattern::Binding> bindings;
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (k[i] != kMissing) bindings.push_back({s.indices()[i], k[i]});
    }
    out.push_back({Pattern(std::move(bindings)), weight});
  }
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
    return x.pattern < y.pattern;
  });
  return out;
}

}  // namespace

std::vector<RestrictionGroup> restriction_groups(const Dataset& d, const AttrSubset& s) {
  validate_subset(s, d.attribute_count());
  if (s.empty()) return {{Pattern{}, d.size()}};
  if (!radix_fits_u64(d, s)) return groups_wide(d, s);

  const auto keys = pack_keys(d, s);
  const auto& w = d.weights();
  std::unordered_map<std::uint64_t, std::int64_t> agg;
  agg.reserve(keys.size() / 4 + 8);
  for (std::size_t r = 0; r < keys.size(); ++r) agg[keys[r]] += w[r];

  std::vector<RestrictionGroup> out;
  out.reserve(agg.size());
  for (const auto& [key, weight] : agg) {
    out.push_back({decode_key(key, d, s), weight});
  }
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
    return x.pattern < y.pattern;
  });
  return out;
}

std::vector<RestrictionGroup> patterns_over(const Dataset& d, const AttrSubset& s) {
  auto groups = restriction_groups(d, s);
  std::erase_if(groups, [&](const RestrictionGroup& g) {
    return g.pattern.size() != s.size();
  });
  return groups;
}

// Keep-rule shared with label building: a PC entry must bind at least
// min(2, |S|) attributes.
std::size_t label_min_bound(const AttrSubset& s) {
  return std::min<std::size_t>(2, s.size());
}

std::int64_t label_group_count(const Dataset& d, const AttrSubset& s,
                               std::int64_t cap) {
  validate_subset(s, d.attribute_count());
  if (s.empty()) return 1;
  const std::size_t min_bound = label_min_bound(s);

  auto bound_attrs_of_key = [&](std::uint64_t key) {
    std::size_t bound = 0;
    for (auto it = s.indices().rbegin(); it != s.indices().rend(); ++it) {
      const auto radix =
          static_cast<std::uint64_t>(d.attribute(*it).domain.size() + 1);
      if (key % radix != 0) ++bound;
      key /= radix;
    }
    return bound;
  };

  if (!radix_fits_u64(d, s)) {
    auto groups = groups_wide(d, s);
    std::int64_t kept = 0;
    for (const auto& g : groups) {
      if (g.pattern.size() >= min_bound) ++kept;
    }
    return std::min(kept, cap + 1);
  }

  const auto keys = pack_keys(d, s);
  std::unordered_map<std::uint64_t, bool> seen;  // key -> counts toward |PC|
  seen.reserve(256);
  std::int64_t kept = 0;
  for (const std::uint64_t key : keys) {
    auto [it, inserted] = seen.emplace(key, false);
    if (!inserted) continue;
    it->second = bound_attrs_of_key(key) >= min_bound;
    if (it->second && ++kept > cap) return cap + 1;
  }
  return kept;
}

Pattern restrict(const Pattern& p, const AttrSubset& s) {
  std::vector<Pattern::Binding> kept;
  for (const auto& b : p.bindings()) {
    if (s.contains(b.attr)) kept.push_back(b);
  }
  return Pattern(std::move(kept));
}

}  // namespace pclabel
