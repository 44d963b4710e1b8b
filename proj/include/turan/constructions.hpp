#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "turan/graph.hpp"

namespace turan {

enum class ClaimStatus { Verified, FormulaChecked, Failed, NotChecked };

std::string_view to_string(ClaimStatus status);

/// One claimed property of a construction and how it was checked.
struct Claim {
  std::string name;
  std::string expected;
  std::string observed;
  ClaimStatus status;
};

struct ConstructionReport {
  std::string name;
  std::vector<std::pair<std::string, Graph>> graphs;
  std::vector<Claim> claims;

  bool all_hold() const;
  const Claim* find(std::string_view claim) const;
};

std::size_t binomial(std::size_t n, std::size_t k);

/// K_{n-1} on 0..n-2 plus vertex n-1 joined to 0..delta-2.
/// Edge count C(n-1, 2) + delta - 1. Requires 1 <= delta <= n-1.
Graph lower_bound_graph(std::size_t n, std::size_t delta);

/// The missing-edge star K_n minus lower_bound_graph(n, delta) = S_{1,n-delta}
/// centered at n-1.
Graph lower_bound_missing(std::size_t n, std::size_t delta);

struct TightnessPair {
  std::size_t n;
  Graph h;       // k disjoint cliques of size (n-1)/k on 0..n-2, apex n-1
  Graph g_full;  // K_n minus a clique on 0..k+1
  Graph g_missing;
  ConstructionReport report;
};

/// n = k(k+6)/2 + 1 (k even). The apex joins `delta` clique vertices,
/// round-robin over the cliques taking each clique's lowest unused vertex.
/// `exact_limit_k` bounds the k for which non-containment is checked by
/// exhaustive search; above it the independence-number argument is used.
TightnessPair tightness_pair(std::size_t k, std::size_t delta, std::size_t exact_limit_k = 3);

/// K_n minus the star centered at 0 with leaves 1..n-2.
Graph ore_extremal(std::size_t n);

/// K_n minus (star centered at 0 with leaves 2..n-2) minus edge {1, n-1}.
Graph second_extremal(std::size_t n);

/// Builds the named construction and checks its claims at the given size.
ConstructionReport lower_bound_report(std::size_t n, std::size_t delta);
ConstructionReport ore_report(std::size_t n);
ConstructionReport second_extremal_report(std::size_t n);

/// Any 8-or-more-vertex graph with one degree-2 vertex whose neighbors are
/// adjacent and all other degrees >= 3: vertex 0 joined to 1 and 2, and the
/// circulant C_{n-1}(1, 2) on 1..n-1.
Graph degree_two_triangle_graph(std::size_t n);

}  // namespace turan
