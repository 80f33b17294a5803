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

#include "reltik/graph.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>
#include <string>

#include "reltik/error.hpp"

namespace reltik {

Graph::Graph(std::size_t n_vertices, std::vector<Edge> edges)
    : n_vertices_(n_vertices), edges_(std::move(edges)) {
  if (n_vertices_ == 0) throw std::invalid_argument("graph needs at least one vertex");
  for (auto& e : edges_) {
    if (e.first >= n_vertices_ || e.second >= n_vertices_)
      throw std::invalid_argument("edge endpoint out of range");
    if (e.first == e.second) throw std::invalid_argument("self loops are not allowed");
    if (e.first > e.second) std::swap(e.first, e.second);
  }
  std::vector<Edge> sorted = edges_;
  std::sort(sorted.begin(), sorted.end(), [](const Edge& a, const Edge& b) {
    return a.first != b.first ? a.first < b.first : a.second < b.second;
  });
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw std::invalid_argument("duplicate edge");
  if (!is_connected(n_vertices_, edges_)) throw InvalidGraphError("graph is not connected");

  offsets_.assign(n_vertices_ + 1, 0);
  for (const auto& e : edges_) {
    ++offsets_[e.first + 1];
    ++offsets_[e.second + 1];
  }
  for (std::size_t v = 0; v < n_vertices_; ++v) offsets_[v + 1] += offsets_[v];
  incidence_.resize(2 * edges_.size());
  std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
  for (std::size_t k = 0; k < edges_.size(); ++k) {
    incidence_[fill[edges_[k].first]++] = k;
    incidence_[fill[edges_[k].second]++] = k;
  }
}

Weights Weights::uniform(const Graph& g, double w, double lambda) {
  Weights out{std::vector<double>(g.n_vertices(), w), std::vector<double>(g.n_edges(), lambda)};
  out.validate(g);
  return out;
}

void Weights::validate(const Graph& g) const {
  if (vertex.size() != g.n_vertices())
    throw std::invalid_argument("vertex weight count " + std::to_string(vertex.size()) +
                                " does not match " + std::to_string(g.n_vertices()) + " vertices");
  if (edge.size() != g.n_edges())
    throw std::invalid_argument("edge weight count " + std::to_string(edge.size()) +
                                " does not match " + std::to_string(g.n_edges()) + " edges");
  auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
  if (!std::all_of(vertex.begin(), vertex.end(), positive))
    throw std::invalid_argument("vertex weights must be positive");
  if (!std::all_of(edge.begin(), edge.end(), positive))
    throw std::invalid_argument("edge weights must be positive");
}

Graph line_graph(std::size_t n) {
  if (n < 2) throw std::invalid_argument("line graph needs n >= 2");
  std::vector<Edge> edges;
  edges.reserve(n - 1);
  for (std::size_t k = 0; k + 1 < n; ++k) edges.push_back({k, k + 1});
  return Graph(n, std::move(edges));
}

Graph grid_graph(std::size_t height, std::size_t width) {
  if (height == 0 || width == 0 || height * width < 2)
    throw std::invalid_argument("grid graph needs at least two pixels");
  std::vector<Edge> edges;
  edges.reserve(height * (width - 1) + (height - 1) * width);
  for (std::size_t r = 0; r < height; ++r)
    for (std::size_t c = 0; c + 1 < width; ++c) edges.push_back({r * width + c, r * width + c + 1});
  for (std::size_t r = 0; r + 1 < height; ++r)
    for (std::size_t c = 0; c < width; ++c) edges.push_back({r * width + c, (r + 1) * width + c});
  return Graph(height * width, std::move(edges));
}

DegreeTable degree_table(const Graph& g) {
  DegreeTable nu(g.n_vertices(), 0);
  for (const auto& e : g.edges()) {
    ++nu[e.first];
    ++nu[e.second];
  }
  return nu;
}

bool is_connected(std::size_t n_vertices, std::span<const Edge> edges) {
  if (n_vertices == 0) return false;
  std::vector<std::vector<std::size_t>> adj(n_vertices);
  for (const auto& e : edges) {
    adj[e.first].push_back(e.second);
    adj[e.second].push_back(e.first);
  }
  std::vector<char> seen(n_vertices, 0);
  std::queue<std::size_t> todo;
  todo.push(0);
  seen[0] = 1;
  std::size_t reached = 1;
  while (!todo.empty()) {
    auto v = todo.front();
    todo.pop();
    for (auto u : adj[v]) {
      if (!seen[u]) {
        seen[u] = 1;
        ++reached;
        todo.push(u);
      }
    }
  }
  return reached == n_vertices;
}

}  // namespace reltik
