#include <doctest.h>

#include <algorithm>
#include <vector>

#include "turan/error.hpp"
#include "turan/graph.hpp"
#include "turan/rng.hpp"
#include "turan/vertex_set.hpp"

using namespace turan;

namespace {

Graph random_graph(std::size_t n, double p, Rng& rng) {
  std::vector<Edge> edges;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) {
      if (rng.bernoulli(p)) edges.emplace_back(u, v);
    }
  }
  return Graph(n, edges);
}

// Largest independent set by subset enumeration.
std::size_t brute_alpha(const Graph& g) {
  const std::size_t n = g.order();
  std::size_t best = 0;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    bool ok = true;
    for (const auto& [u, v] : g.edges()) {
      if ((mask >> u & 1u) && (mask >> v & 1u)) ok = false;
    }
    if (ok) best = std::max<std::size_t>(best, static_cast<std::size_t>(__builtin_popcount(mask)));
  }
  return best;
}

}  // namespace

TEST_CASE("vertex set algebra") {
  VertexSet a(130, {0, 5, 64, 129});
  VertexSet b(130, {5, 64, 100});
  CHECK(a.size() == 4);
  CHECK((a & b).members() == std::vector<Vertex>{5, 64});
  CHECK((a | b).size() == 5);
  CHECK((a - b).members() == std::vector<Vertex>{0, 129});
  CHECK(a.intersects(b));
  CHECK(a.intersection_size(b) == 2);
  CHECK(a.next(6) == 64);
  CHECK(a.next(130) == 130);
  CHECK(VertexSet(130).first() == 130);
  CHECK(VertexSet::full(130).size() == 130);
  a.erase(0);
  CHECK(a.first() == 5);
  CHECK(!a.contains(1000));
}

TEST_CASE("graph construction rejects bad input") {
  CHECK_THROWS_AS(Graph(3, {{0, 3}}), Error);
  CHECK_THROWS_AS(Graph(3, {{1, 1}}), Error);
  CHECK_THROWS_AS(Graph(3, {{0, 1}, {1, 0}}), Error);
  try {
    Graph(3, {{2, 2}});
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidGraph);
  }
}

TEST_CASE("degrees, adjacency and edge listing") {
  const Graph g(5, {{3, 1}, {0, 1}, {1, 2}});
  CHECK(g.edge_count() == 3);
  CHECK(g.degree(1) == 3);
  CHECK(g.min_degree() == 0);
  CHECK(g.max_degree() == 3);
  CHECK(g.has_edge(1, 3));
  CHECK(g.has_edge(3, 1));
  CHECK(!g.has_edge(0, 2));
  CHECK(g.edges() == std::vector<Edge>{{0, 1}, {1, 2}, {1, 3}});
  const auto nb = g.neighbors(1);
  CHECK(std::vector<Vertex>(nb.begin(), nb.end()) == std::vector<Vertex>{0, 2, 3});
}

TEST_CASE("complement is an involution and edge counts add up") {
  Rng rng(7);
  for (int rep = 0; rep < 20; ++rep) {
    const Graph g = random_graph(9, 0.4, rng);
    const Graph c = complement(g);
    CHECK(g.edge_count() + c.edge_count() == 36);
    CHECK(complement(c) == g);
    for (const auto& [u, v] : c.edges()) CHECK(!g.has_edge(u, v));
  }
}

TEST_CASE("degree order is descending and stable") {
  const Graph path(4, {{0, 1}, {1, 2}, {2, 3}});
  CHECK(degree_sequence_order(path) == std::vector<Vertex>{1, 2, 0, 3});
  const Graph empty(3, std::span<const Edge>{});
  CHECK(degree_sequence_order(empty) == std::vector<Vertex>{0, 1, 2});
}

TEST_CASE("closed neighborhood") {
  const Graph path(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}});
  CHECK(closed_neighborhood(path, VertexSet(5, {0})).members() == std::vector<Vertex>{0, 1});
  CHECK(closed_neighborhood(path, VertexSet(5, {0, 4})).members() == std::vector<Vertex>{0, 1, 3, 4});
}

TEST_CASE("greedy independent set on C6 picks the even vertices") {
  const Graph c6(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {0, 5}});
  CHECK(greedy_independent_set(c6, VertexSet::full(6)).members() == std::vector<Vertex>{0, 2, 4});
}

TEST_CASE("greedy meets the Caro-Wei bound and never beats the true optimum") {
  Rng rng(11);
  for (int rep = 0; rep < 60; ++rep) {
    const std::size_t n = 6 + rep % 9;
    const Graph g = random_graph(n, 0.1 + 0.05 * (rep % 8), rng);
    const VertexSet s = greedy_independent_set(g, VertexSet::full(n));
    CHECK(is_independent(g, s));
    double caro_wei = 0.0;
    for (Vertex v = 0; v < n; ++v) caro_wei += 1.0 / (1.0 + static_cast<double>(g.degree(v)));
    CHECK(static_cast<double>(s.size()) >= caro_wei - 1e-9);
    CHECK(s.size() <= brute_alpha(g));
  }
}

TEST_CASE("greedy respects candidates and the degree cap") {
  const Graph star(6, {{0, 1}, {0, 2}, {0, 3}, {0, 4}});
  const VertexSet s = greedy_independent_set(star, VertexSet(6, {0, 5}), std::size_t{3});
  CHECK(s.members() == std::vector<Vertex>{5});
  const VertexSet all = greedy_independent_set(star, VertexSet::full(6), std::size_t{4});
  CHECK(all.members() == std::vector<Vertex>{1, 2, 3, 4, 5});
}

TEST_CASE("is_independent") {
  const Graph g(3, {{0, 1}});
  CHECK(is_independent(g, VertexSet(3, {0, 2})));
  CHECK(!is_independent(g, VertexSet(3, {0, 1})));
}

TEST_CASE("derived seeds are stable and distinct") {
  CHECK(derive_seed(0, 0) == derive_seed(0, 0));
  CHECK(derive_seed(0, 0) != derive_seed(0, 1));
  CHECK(derive_seed(1, 0) != derive_seed(0, 1));
  Rng a(5), b(5);
  for (int i = 0; i < 100; ++i) CHECK(a.below(17) == b.below(17));
  Rng c(3);
  for (int i = 0; i < 1000; ++i) {
    const double u = c.uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
}
