#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pclabel/label.hpp"

namespace pclabel {

enum class Objective { MaxAbs, MaxQ, MeanQ };

struct SearchConfig {
  std::int64_t size_bound = 1;  // B_s, on |PC| only
  // Explicit pattern set; empty optional means all complete rows (patterns
  // binding every attribute, one per distinct fully-present row).
  std::optional<std::vector<Pattern>> patterns;
  Objective objective = Objective::MaxAbs;
  EvalMode eval_mode = EvalMode::Exact;
  int threads = 1;

  void validate() const;
};

struct SearchStats {
  std::int64_t subsets_generated = 0;    // lattice nodes created in-loop
  std::int64_t subsets_size_checked = 0;
  std::int64_t candidates_final = 0;
  std::int64_t labels_fully_evaluated = 0;
  std::int64_t duplicate_generations = 0;  // must stay 0 for the top-down scan

  std::string to_json() const;
};

struct SearchResult {
  Label label;
  AttrSubset subset;
  double error = 0.0;
  EvaluationReport report;
  SearchStats stats;
  // Subsets the final arg-min ran over (top-down: the cands list).
  std::vector<AttrSubset> candidates;
};

// gen(S): supersets formed by adding one attribute with index greater than
// every index in S, ascending. gen({}) yields all singletons.
std::vector<AttrSubset> gen(const AttrSubset& s, int attribute_count);

// Erases from cands exactly the direct parents of c (subsets of c with one
// fewer attribute).
void remove_parents(std::vector<AttrSubset>& cands, const AttrSubset& c);

// Top-down lattice scan: breadth-first over gen, keeping the bounded subsets
// as candidates while discarding their direct parents, then returning the
// candidate with minimal error. Falls back to the S = {} label when no subset
// fits the bound.
SearchResult top_down_search(const Dataset& d, const SearchConfig& cfg);

// Enumerates subsets in increasing size order ({} first, then pairs upward;
// singleton labels add nothing beyond VC and are skipped), stopping once an
// entire size level exceeds the bound.
SearchResult naive_search(const Dataset& d, const SearchConfig& cfg);

// Exhaustive optimum over {} and every subset of two or more attributes.
// Ties break on smaller |PC|, then lexicographically smaller index sequence.
// Guarded to at most 20 attributes.
SearchResult brute_force_optimal(const Dataset& d, const SearchConfig& cfg);

}  // namespace pclabel
