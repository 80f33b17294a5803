// Copyright 2026 The reltik Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace reltik {

/// An undirected edge stored with first < second.
///
/// Members are 0-based vertex indices. Identifiers shown to users (edge-list
/// files, reports) are 1-based; use Graph::edge_id for those.
struct Edge {
  std::size_t first = 0;
  std::size_t second = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Connected, undirected simple graph with a fixed edge order.
///
/// The edge order is part of the contract: block fields, edge weights and
/// edge scalars are all indexed by position in edges(). Immutable after
/// construction.
class Graph {
 public:
  /// Builds a graph from 0-based index pairs. Pairs are normalized to
  /// first < second; self loops, duplicates, out-of-range indices and
  /// disconnected inputs throw std::invalid_argument.
  Graph(std::size_t n_vertices, std::vector<Edge> edges);

  std::size_t n_vertices() const { return n_vertices_; }
  std::size_t n_edges() const { return edges_.size(); }
  std::span<const Edge> edges() const { return edges_; }
  const Edge& edge(std::size_t k) const { return edges_[k]; }

  /// 1-based (n, m) identifiers of edge k, n < m.
  std::pair<std::size_t, std::size_t> edge_id(std::size_t k) const {
    return {edges_[k].first + 1, edges_[k].second + 1};
  }

  /// Edges incident to each vertex, in increasing edge order.
  std::span<const std::size_t> incident_edges(std::size_t v) const {
    return {incidence_.data() + offsets_[v], incidence_.data() + offsets_[v + 1]};
  }

 private:
  std::size_t n_vertices_;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_;
  std::vector<std::size_t> incidence_;
};

/// Per-vertex data weights w and per-edge regularization weights lambda.
struct Weights {
  std::vector<double> vertex;
  std::vector<double> edge;

  static Weights uniform(const Graph& g, double w, double lambda);

  /// Throws std::invalid_argument unless sizes match g and all entries are
  /// finite and strictly positive.
  void validate(const Graph& g) const;
};

/// nu_n = number of edges starting or ending in n.
using DegreeTable = std::vector<std::size_t>;

/// Path 1 - 2 - ... - n.
Graph line_graph(std::size_t n);

/// Image graph with 4-neighbourhood. Pixels are numbered row-major; all
/// horizontal edges come before all vertical ones.
Graph grid_graph(std::size_t height, std::size_t width);

DegreeTable degree_table(const Graph& g);

/// Breadth-first reachability from vertex 0 over an edge list.
bool is_connected(std::size_t n_vertices, std::span<const Edge> edges);

}  // namespace reltik
