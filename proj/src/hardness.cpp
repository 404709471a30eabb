#include "pclabel/hardness.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <istream>
#include <sstream>

#include "pclabel/error.hpp"

namespace pclabel {

Graph::Graph(int node_count, std::vector<std::pair<int, int>> edges)
    : node_count_(node_count), edges_(std::move(edges)) {
  if (node_count_ < 2) throw ValidationError("graph needs at least two nodes");
  for (auto& [u, v] : edges_) {
    if (u == v) throw ValidationError("self loops are not allowed");
    if (u > v) std::swap(u, v);
    if (u < 0 || v >= node_count_) {
      throw ValidationError("edge endpoint out of range");
    }
  }
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
  if (edges_.empty()) throw ValidationError("graph needs at least one edge");
}

bool Graph::has_edge(int u, int v) const {
  if (u > v) std::swap(u, v);
  return std::binary_search(edges_.begin(), edges_.end(), std::make_pair(u, v));
}

Graph parse_edge_list(std::istream& in) {
  std::vector<std::pair<int, int>> edges;
  int max_id = 0;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line);
    int u = 0, v = 0;
    if (!(ls >> u >> v) || u < 1 || v < 1) {
      throw ParseError("line " + std::to_string(line_no) +
                       ": expected two positive node ids");
    }
    max_id = std::max({max_id, u, v});
    edges.emplace_back(u - 1, v - 1);
  }
  if (edges.empty()) throw ParseError("edge list is empty");
  return Graph(std::max(max_id, 2), std::move(edges));
}

Graph parse_edge_list_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  return parse_edge_list(in);
}

ReductionInstance reduce_vertex_cover(const Graph& g, int k) {
  const int n = g.node_count();
  const auto m = static_cast<std::int64_t>(g.edge_count());
  if (k < 2 || k > n - 1) {
    throw ValidationError("k must lie in [2, |V|-1]");
  }

  // Attributes A_1..A_n with domain {x1, x2}, then A_E with one value per edge.
  std::vector<AttributeSchema> schema;
  for (int i = 0; i < n; ++i) {
    schema.push_back({"A_" + std::to_string(i + 1), i, {"x1", "x2"},
                      AttributeKind::Categorical});
  }
  std::vector<std::string> edge_domain;
  for (std::int64_t r = 0; r < m; ++r) {
    edge_domain.push_back("x" + std::to_string(r + 1));
  }
  const int edge_attr = n;
  schema.push_back({"A_E", edge_attr, std::move(edge_domain),
                    AttributeKind::Categorical});

  std::vector<std::vector<std::int32_t>> columns(static_cast<std::size_t>(n + 1));
  std::vector<std::int64_t> weights;
  auto add_row = [&](std::initializer_list<std::pair<int, std::int32_t>> cells,
                     std::int64_t weight) {
    for (auto& col : columns) col.push_back(kMissing);
    for (const auto& [attr, code] : cells) {
      columns[static_cast<std::size_t>(attr)].back() = code;
    }
    weights.push_back(weight);
  };

  // Per edge e_r = {v_i, v_j}: |E| tuples for each (p, q) value combination
  // over A_i, A_j with A_E = x_r, then the matching-value block of weight
  // 2|E|^2 per value.
  for (int r = 0; r < g.edge_count(); ++r) {
    const auto [i, j] = g.edges()[static_cast<std::size_t>(r)];
    for (std::int32_t p = 0; p < 2; ++p) {
      for (std::int32_t q = 0; q < 2; ++q) {
        add_row({{edge_attr, r}, {i, p}, {j, q}}, m);
      }
    }
    for (std::int32_t p = 0; p < 2; ++p) {
      add_row({{i, p}, {j, p}}, 2 * m * m);
    }
  }
  // Per non-edge pair: |E| tuples per (p, q) combination.
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (g.has_edge(i, j)) continue;
      for (std::int32_t p = 0; p < 2; ++p) {
        for (std::int32_t q = 0; q < 2; ++q) {
          add_row({{i, p}, {j, q}}, m);
        }
      }
    }
  }

  ReductionInstance instance;
  instance.dataset = Dataset(std::move(schema), std::move(columns),
                             std::move(weights));
  for (int r = 0; r < g.edge_count(); ++r) {
    const auto [i, j] = g.edges()[static_cast<std::size_t>(r)];
    instance.patterns.push_back(
        Pattern::from_pairs({{edge_attr, r}, {i, 0}, {j, 0}}));
  }
  instance.size_bound =
      2 * m + 2 * static_cast<std::int64_t>(k) * (k - 1);  // 2|E| + 4*sum i
  instance.error_bound = 0.0;
  instance.edge_attr = edge_attr;
  instance.k = k;
  return instance;
}

bool brute_force_vertex_cover(const Graph& g, int k) {
  const int n = g.node_count();
  if (n > 20) throw ValidationError("vertex cover brute force is guarded to 20 nodes");
  if (k >= n) return true;
  if (k < 0) return false;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    if (std::popcount(mask) > k) continue;
    bool covers = true;
    for (const auto& [u, v] : g.edges()) {
      if (!((mask >> u) & 1u) && !((mask >> v) & 1u)) {
        covers = false;
        break;
      }
    }
    if (covers) return true;
  }
  return false;
}

std::int64_t reduction_label_size_formula(const Graph& g, const AttrSubset& s,
                                          int edge_attr) {
  if (!s.contains(edge_attr)) {
    throw ValidationError("subset must contain the edge attribute");
  }
  std::int64_t node_attrs = 0;
  std::int64_t touched = 0;
  for (const auto& [u, v] : g.edges()) {
    if (s.contains(u) || s.contains(v)) ++touched;
  }
  for (int a : s.indices()) {
    if (a != edge_attr) ++node_attrs;
  }
  if (node_attrs < 1) {
    throw ValidationError("subset must contain at least one node attribute");
  }
  return 2 * touched + 2 * node_attrs * (node_attrs - 1);
}

}  // namespace pclabel
