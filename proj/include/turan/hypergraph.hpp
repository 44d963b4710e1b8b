#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "turan/constructions.hpp"
#include "turan/graph.hpp"

namespace turan {

using Triple = std::array<Vertex, 3>;

/// 3-uniform hypergraph; edges stored with ascending members, sorted.
class Hypergraph3 {
 public:
  Hypergraph3() = default;
  /// Throws Error(InvalidGraph) on repeated members, out-of-range vertices or
  /// duplicate edges. Members may be given in any order.
  Hypergraph3(std::size_t n, std::span<const Triple> edges);

  std::size_t order() const noexcept { return n_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  const std::vector<Triple>& edges() const noexcept { return edges_; }
  std::size_t degree(Vertex v) const;
  bool has_edge(Triple t) const;

  friend bool operator==(const Hypergraph3&, const Hypergraph3&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<Triple> edges_;
};

/// Link of a vertex: graph on the other n-1 vertices, re-indexed ascending.
struct LinkGraph {
  Graph graph;
  std::vector<Vertex> original;  // local index -> hypergraph vertex
};

LinkGraph link(const Hypergraph3& hg, Vertex v);

/// s disjoint complete 3-graphs on {5i..5i+4} plus the edge {0, 1, 5s}.
Hypergraph3 counterexample_h(std::size_t s);

/// U = {0..n-3} split into three near-equal parts (larger parts first),
/// x = n-2, y = n-1. Edges: all triples of U and every {x|y, a, b} with a, b
/// in different parts.
Hypergraph3 construction_t(std::size_t n);

/// Part sizes used by construction_t(n).
std::array<std::size_t, 3> construction_t_parts(std::size_t n);

/// Closed-form edge count of construction_t(n).
std::size_t construction_t_edge_count(std::size_t n);

bool contains_k4(const Graph& g);

/// Exact 3-colorability: K4 search, then DSatur; exhaustive backtracking
/// only if DSatur needs a fourth color (n <= 40 there).
bool is_3_colorable(const Graph& g);

enum class ObstructionVerdict { NoSpanningCopy, Inconclusive };

struct ObstructionReport {
  ObstructionVerdict verdict;
  std::size_t colorable_in_host;         // a
  std::size_t non_colorable_in_pattern;  // b
};

/// Pigeonhole test: every pattern vertex with a non-3-colorable link needs a
/// host vertex with a non-3-colorable link.
ObstructionReport local_obstruction_check(const Hypergraph3& host, const Hypergraph3& pattern);

/// True iff some vertex link is a single edge.
bool links_extremal_zero(const Hypergraph3& hg);

/// Exhaustive search for a bijection placing every pattern edge on a host
/// edge. Returns pattern -> host, or nullopt. n <= limit.
std::optional<std::vector<Vertex>> find_spanning_embedding(const Hypergraph3& host, const Hypergraph3& pattern,
                                                           std::size_t limit = 12);

ConstructionReport counterexample_report(std::size_t s);
ConstructionReport construction_t_report(std::size_t n);

}  // namespace turan
