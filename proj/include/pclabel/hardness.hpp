#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "pclabel/dataset.hpp"

namespace pclabel {

// Undirected graph with at least two nodes and one edge, no self loops.
// Edges are stored as (i, j) with i < j, deduplicated, sorted.
class Graph {
 public:
  Graph(int node_count, std::vector<std::pair<int, int>> edges);

  int node_count() const { return node_count_; }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  bool has_edge(int u, int v) const;

 private:
  int node_count_ = 0;
  std::vector<std::pair<int, int>> edges_;
};

// Edge-list text: one "u v" pair per line, 1-based node ids; blank lines and
// lines starting with '#' are ignored. Node count is the largest id seen.
Graph parse_edge_list(std::istream& in);
Graph parse_edge_list_file(const std::string& path);

// Reduction output: a dataset over one attribute per node plus A_E, the edge
// pattern set, and the size bound. The error bound of the decision instance
// is zero.
struct ReductionInstance {
  Dataset dataset;
  std::vector<Pattern> patterns;  // one per edge: {A_E=x_r, A_i=x1, A_j=x1}
  std::int64_t size_bound = 0;    // B_s = 2|E| + 4*sum_{i=1}^{k-1} i
  double error_bound = 0.0;       // B_e
  int edge_attr = 0;              // index of A_E (last attribute)
  int k = 0;
};

ReductionInstance reduce_vertex_cover(const Graph& g, int k);

// True iff some node subset of size <= k covers every edge. Guarded to 20
// nodes.
bool brute_force_vertex_cover(const Graph& g, int k);

// 2|E'| + 4*sum_{i=1}^{k-1} i where E' are the edges touching a node of s and
// k the number of node attributes in s. s must contain A_E and at least one
// node attribute.
std::int64_t reduction_label_size_formula(const Graph& g, const AttrSubset& s,
                                          int edge_attr);

}  // namespace pclabel
