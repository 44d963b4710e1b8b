#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "turan/graph.hpp"
#include "turan/packing.hpp"

namespace turan {

/// Size limits of the brute-force engines.
inline constexpr std::size_t kExactPackSoftLimit = 16;
inline constexpr std::size_t kExactPackHardLimit = 64;
inline constexpr std::size_t kHamiltonLimit = 20;
inline constexpr std::size_t kBruteExLimit = 9;
inline constexpr std::size_t kEnumerateLimit = 8;
inline constexpr std::size_t kCanonicalLimit = 11;

/// Complete backtracking search for a packing of g and h. Beyond
/// `soft_limit` vertices throws Error(InstanceTooLarge) unless `force`.
std::optional<PackingMap> exact_pack(const Graph& g, const Graph& h, std::size_t soft_limit = kExactPackSoftLimit,
                                     bool force = false);

/// Exact Hamilton-cycle decision (subset dynamic programming), n <= 20.
bool is_hamiltonian(const Graph& g);

/// Exact independence number by branch and bound, n <= 64.
std::size_t independence_number(const Graph& g);

/// Canonical adjacency key: isomorphic graphs (and only those) share it.
/// n <= 11 so the upper triangle fits into 64 bits.
std::uint64_t canonical_key(const Graph& g);
/// The graph whose adjacency is the canonical key.
Graph canonical_graph(const Graph& g);
Graph graph_from_key(std::size_t n, std::uint64_t key);
bool isomorphic(const Graph& a, const Graph& b);

struct ExSearchResult {
  std::size_t n = 0;
  std::size_t ex_value = 0;
  std::size_t min_missing = 0;
  /// Host graph with ex_value edges and no spanning copy of h.
  Graph witness;
  /// Its complement, the missing edges.
  Graph witness_missing;
};

/// Exact ex(n, h) for n = |V(h)| <= 9 by enumerating missing-edge graphs
/// level by level (up to isomorphism) until one fails to pack with h.
ExSearchResult brute_ex(const Graph& h);

/// Every isomorphism class of n-vertex host graphs with ex(n, h) edges and no
/// spanning copy of h, in canonical-key order. n <= 8.
std::vector<Graph> enumerate_extremal(const Graph& h);

}  // namespace turan
