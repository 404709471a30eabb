#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "pclabel/dataset.hpp"

namespace fixtures {

// 18-row demographic sample, attribute order gender, age group, race,
// marital status.
inline const char* kFragmentCsv =
    "Gender,Age group,Race,Marital status\n"
    "Female,under 20,African-American,single\n"
    "Male,20-39,African-American,divorced\n"
    "Male,under 20,Hispanic,single\n"
    "Male,20-39,Caucasian,married\n"
    "Female,20-39,African-American,divorced\n"
    "Male,20-39,Caucasian,divorced\n"
    "Female,20-39,African-American,married\n"
    "Male,under 20,African-American,single\n"
    "Female,20-39,Caucasian,divorced\n"
    "Male,under 20,Caucasian,single\n"
    "Male,20-39,Hispanic,divorced\n"
    "Female,under 20,Hispanic,single\n"
    "Female,20-39,Hispanic,married\n"
    "Female,under 20,Caucasian,single\n"
    "Female,20-39,Caucasian,married\n"
    "Male,20-39,Hispanic,married\n"
    "Male,20-39,African-American,married\n"
    "Female,20-39,Hispanic,divorced\n";

inline pclabel::Dataset fragment() {
  std::istringstream in(kFragmentCsv);
  return pclabel::load_csv(in);
}

// Attribute indices in the fragment.
inline constexpr int kGender = 0;
inline constexpr int kAge = 1;
inline constexpr int kRace = 2;
inline constexpr int kMarital = 3;

// ---------------------------------------------------------------------------
// Independent oracles: plain row scans over materialized logical rows, no
// kernels, no hashing, no label machinery.
// ---------------------------------------------------------------------------

struct OracleTable {
  // one entry per logical row (weights expanded)
  std::vector<std::vector<std::int32_t>> rows;

  static OracleTable from(const pclabel::Dataset& d) {
    OracleTable t;
    for (std::size_t r = 0; r < d.physical_rows(); ++r) {
      std::vector<std::int32_t> row;
      for (int a = 0; a < d.attribute_count(); ++a) row.push_back(d.column(a)[r]);
      for (std::int64_t w = 0; w < d.weights()[r]; ++w) t.rows.push_back(row);
    }
    return t;
  }
};

inline std::int64_t oracle_count(const OracleTable& t, const pclabel::Pattern& p) {
  std::int64_t count = 0;
  for (const auto& row : t.rows) {
    bool match = true;
    for (const auto& b : p.bindings()) {
      if (row[static_cast<std::size_t>(b.attr)] != b.value) {
        match = false;
        break;
      }
    }
    if (match) ++count;
  }
  return count;
}

// Full patterns over s (rows missing any attribute of s contribute nothing).
inline std::map<std::vector<std::int32_t>, std::int64_t> oracle_groups(
    const OracleTable& t, const std::vector<int>& s) {
  std::map<std::vector<std::int32_t>, std::int64_t> groups;
  for (const auto& row : t.rows) {
    std::vector<std::int32_t> key;
    bool complete = true;
    for (int a : s) {
      const std::int32_t code = row[static_cast<std::size_t>(a)];
      if (code == pclabel::kMissing) {
        complete = false;
        break;
      }
      key.push_back(code);
    }
    if (complete) ++groups[key];
  }
  return groups;
}

inline std::int64_t oracle_full_pattern_count(const OracleTable& t,
                                              const std::vector<int>& s) {
  return static_cast<std::int64_t>(oracle_groups(t, s).size());
}

// ---------------------------------------------------------------------------
// Random dataset generation (missing-free, weighted)
// ---------------------------------------------------------------------------

struct RandomDatasetSpec {
  int min_attrs = 2, max_attrs = 6;
  int min_domain = 2, max_domain = 3;
  int min_rows = 1, max_rows = 60;
  int max_weight = 5;
};

inline pclabel::Dataset random_dataset(std::mt19937_64& rng,
                                       const RandomDatasetSpec& spec = {}) {
  const int attrs =
      spec.min_attrs + static_cast<int>(rng() % static_cast<std::uint64_t>(
                                                    spec.max_attrs - spec.min_attrs + 1));
  std::vector<int> dom_sizes;
  for (int a = 0; a < attrs; ++a) {
    dom_sizes.push_back(
        spec.min_domain + static_cast<int>(rng() % static_cast<std::uint64_t>(
                                                       spec.max_domain - spec.min_domain + 1)));
  }
  const int rows =
      spec.min_rows + static_cast<int>(rng() % static_cast<std::uint64_t>(
                                                   spec.max_rows - spec.min_rows + 1));
  std::vector<std::vector<std::int32_t>> columns(static_cast<std::size_t>(attrs));
  std::vector<std::int64_t> weights;
  for (int r = 0; r < rows; ++r) {
    for (int a = 0; a < attrs; ++a) {
      columns[static_cast<std::size_t>(a)].push_back(
          static_cast<std::int32_t>(rng() % static_cast<std::uint64_t>(
                                              dom_sizes[static_cast<std::size_t>(a)])));
    }
    weights.push_back(1 + static_cast<std::int64_t>(
                              rng() % static_cast<std::uint64_t>(spec.max_weight)));
  }
  // Dense re-encoding keeps the active-domain invariant when a value never
  // got drawn.
  std::vector<pclabel::AttributeSchema> schema;
  for (int a = 0; a < attrs; ++a) {
    auto& col = columns[static_cast<std::size_t>(a)];
    std::set<std::int32_t> present(col.begin(), col.end());
    std::map<std::int32_t, std::int32_t> dense;
    std::vector<std::string> domain;
    for (std::int32_t v : present) {
      dense[v] = static_cast<std::int32_t>(domain.size());
      domain.push_back("v" + std::to_string(v));
    }
    for (auto& c : col) c = dense[c];
    schema.push_back({"a" + std::to_string(a), a, std::move(domain),
                      pclabel::AttributeKind::Categorical});
  }
  return pclabel::Dataset(std::move(schema), std::move(columns), std::move(weights));
}

}  // namespace fixtures
