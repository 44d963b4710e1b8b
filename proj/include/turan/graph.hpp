#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "turan/vertex_set.hpp"

namespace turan {

using Edge = std::pair<Vertex, Vertex>;

/// Immutable simple undirected graph on vertices [0, n).
///
/// Adjacency is kept in compressed sparse rows with each neighbor list
/// sorted ascending. Every graph the packing engine touches is sparse
/// (at most n edges for G, at most n * sqrt(n) / 400 for H), so CSR keeps
/// memory linear in the input while VertexSet covers the dense set algebra.
class Graph {
 public:
  Graph() = default;

  /// Throws Error(InvalidGraph) on self-loops, out-of-range endpoints or
  /// repeated edges. Endpoint order within a pair is irrelevant.
  Graph(std::size_t n, std::span<const Edge> edges);
  Graph(std::size_t n, std::initializer_list<Edge> edges)
      : Graph(n, std::span<const Edge>(edges.begin(), edges.size())) {}

  std::size_t order() const noexcept { return n_; }
  std::size_t edge_count() const noexcept { return targets_.size() / 2; }

  std::size_t degree(Vertex v) const { return offsets_[v + 1] - offsets_[v]; }
  std::span<const Vertex> neighbors(Vertex v) const {
    return {targets_.data() + offsets_[v], targets_.data() + offsets_[v + 1]};
  }
  bool has_edge(Vertex u, Vertex v) const;

  std::size_t min_degree() const;
  std::size_t max_degree() const;

  /// Edges as (u, v) with u < v, sorted lexicographically.
  std::vector<Edge> edges() const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<std::size_t> offsets_{0};
  std::vector<Vertex> targets_;
};

/// Complement graph. Quadratic in n; meant for oracle-sized inputs.
Graph complement(const Graph& g);

/// Vertices sorted by non-increasing degree, ties by ascending index.
std::vector<Vertex> degree_sequence_order(const Graph& g);

/// W together with every neighbor of a member of W.
VertexSet closed_neighborhood(const Graph& g, const VertexSet& w);

/// Minimum-degree greedy independent set inside `candidates`.
///
/// Candidates whose degree in `g` exceeds `degree_cap` are discarded first.
/// The remaining vertices induce a subgraph; the greedy repeatedly takes the
/// vertex of smallest current induced degree (lowest index on ties) and
/// deletes its closed neighborhood. The result has size at least
/// sum over candidates of 1/(1 + induced degree), which in turn is at least
/// |candidates| / (1 + average induced degree).
VertexSet greedy_independent_set(const Graph& g, const VertexSet& candidates,
                                 std::optional<std::size_t> degree_cap = std::nullopt);

bool is_independent(const Graph& g, const VertexSet& s);

}  // namespace turan
