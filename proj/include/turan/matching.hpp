#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "turan/vertex_set.hpp"

namespace turan {

/// Bipartite graph with left side [0, left_size) and right side
/// [0, right_size). Each left vertex owns a bitset row over the right side,
/// which keeps near-complete instances (the Hall graph of the final packing
/// stage) at |L| * |R| bits instead of a pair list.
class BipartiteGraph {
 public:
  BipartiteGraph(std::size_t left_size, std::size_t right_size);
  BipartiteGraph(std::size_t left_size, std::size_t right_size,
                 std::span<const std::pair<Vertex, Vertex>> edges);

  std::size_t left_size() const noexcept { return rows_.size(); }
  std::size_t right_size() const noexcept { return right_size_; }

  /// Throws Error(VertexOutOfRange) on bad indices. Re-adding an edge is a no-op.
  void add_edge(Vertex left, Vertex right);
  void set_row(Vertex left, VertexSet row);
  const VertexSet& row(Vertex left) const { return rows_[left]; }
  bool has_edge(Vertex left, Vertex right) const { return rows_[left].contains(right); }
  std::size_t edge_count() const;

 private:
  std::size_t right_size_;
  std::vector<VertexSet> rows_;
};

/// Maximum matching by Hopcroft-Karp phases (layered BFS, then vertex-disjoint
/// shortest augmenting paths). Returns (left, right) pairs sorted by left.
std::vector<std::pair<Vertex, Vertex>> maximum_bipartite_matching(const BipartiteGraph& p);

}  // namespace turan
