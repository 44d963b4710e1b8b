#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <set>

#include "turan/constructions.hpp"
#include "turan/error.hpp"
#include "turan/oracle.hpp"
#include "turan/rng.hpp"

using namespace turan;

namespace {

Graph from_mask(std::size_t n, std::uint32_t mask) {
  std::vector<Edge> edges;
  std::size_t bit = 0;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v, ++bit) {
      if (mask >> bit & 1u) edges.emplace_back(u, v);
    }
  }
  return Graph(n, edges);
}

Graph random_graph(std::size_t n, double p, Rng& rng) {
  std::vector<Edge> edges;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) {
      if (rng.bernoulli(p)) edges.emplace_back(u, v);
    }
  }
  return Graph(n, edges);
}

Graph cycle(std::size_t n) {
  std::vector<Edge> edges;
  for (Vertex v = 0; v + 1 < n; ++v) edges.emplace_back(v, v + 1);
  edges.emplace_back(0, static_cast<Vertex>(n - 1));
  return Graph(n, edges);
}

Graph relabel(const Graph& g, const std::vector<Vertex>& p) {
  std::vector<Edge> edges;
  for (const auto& [u, v] : g.edges()) edges.emplace_back(std::min(p[u], p[v]), std::max(p[u], p[v]));
  return Graph(g.order(), edges);
}

// Tries every bijection.
bool brute_packs(const Graph& g, const Graph& h) {
  std::vector<Vertex> p(g.order());
  std::iota(p.begin(), p.end(), Vertex{0});
  do {
    bool ok = true;
    for (const auto& [u, v] : g.edges()) {
      if (h.has_edge(p[u], p[v])) {
        ok = false;
        break;
      }
    }
    if (ok) return true;
  } while (std::next_permutation(p.begin(), p.end()));
  return false;
}

bool brute_hamiltonian(const Graph& g) {
  const std::size_t n = g.order();
  if (n < 3) return false;
  std::vector<Vertex> p(n);
  std::iota(p.begin(), p.end(), Vertex{0});
  do {
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i) ok = g.has_edge(p[i], p[(i + 1) % n]);
    if (ok) return true;
  } while (std::next_permutation(p.begin() + 1, p.end()));
  return false;
}

bool brute_isomorphic(const Graph& a, const Graph& b) {
  if (a.edge_count() != b.edge_count()) return false;
  std::vector<Vertex> p(a.order());
  std::iota(p.begin(), p.end(), Vertex{0});
  do {
    if (relabel(a, p) == b) return true;
  } while (std::next_permutation(p.begin(), p.end()));
  return false;
}

std::size_t brute_alpha(const Graph& g) {
  std::size_t best = 0;
  for (std::uint32_t mask = 0; mask < (1u << g.order()); ++mask) {
    bool ok = true;
    for (const auto& [u, v] : g.edges()) ok = ok && !((mask >> u & 1u) && (mask >> v & 1u));
    if (ok) best = std::max<std::size_t>(best, static_cast<std::size_t>(__builtin_popcount(mask)));
  }
  return best;
}

}  // namespace

TEST_CASE("exact_pack agrees with trying every bijection") {
  Rng rng(17);
  for (int rep = 0; rep < 200; ++rep) {
    const std::size_t n = 4 + rep % 4;
    const Graph g = random_graph(n, 0.2 + 0.1 * (rep % 5), rng);
    const Graph h = random_graph(n, 0.2 + 0.1 * (rep % 4), rng);
    const auto map = exact_pack(g, h);
    CHECK(map.has_value() == brute_packs(g, h));
    if (map) CHECK(verify_packing(g, h, *map));
  }
}

TEST_CASE("exact_pack size limits") {
  const Graph g(17, {});
  CHECK_THROWS_AS(exact_pack(g, cycle(17)), Error);
  CHECK(exact_pack(g, cycle(17), 16, true).has_value());
  CHECK_THROWS_AS(exact_pack(Graph(65, {}), Graph(65, {}), 16, true), Error);
}

TEST_CASE("Hamiltonicity agrees with brute force") {
  CHECK(!is_hamiltonian(Graph(2, {{0, 1}})));
  CHECK(is_hamiltonian(cycle(3)));
  CHECK(!is_hamiltonian(ore_extremal(6)));
  Rng rng(4);
  for (int rep = 0; rep < 150; ++rep) {
    const std::size_t n = 3 + rep % 6;
    const Graph g = random_graph(n, 0.35 + 0.1 * (rep % 5), rng);
    CHECK(is_hamiltonian(g) == brute_hamiltonian(g));
  }
  CHECK_THROWS_AS(is_hamiltonian(Graph(21, {})), Error);
}

TEST_CASE("independence number agrees with subset enumeration") {
  Rng rng(6);
  for (int rep = 0; rep < 100; ++rep) {
    const std::size_t n = 5 + rep % 10;
    const Graph g = random_graph(n, 0.15 + 0.07 * (rep % 8), rng);
    CHECK(independence_number(g) == brute_alpha(g));
  }
}

TEST_CASE("canonical keys separate exactly the isomorphism classes") {
  // Unlabeled graph counts on 1..6 vertices: 1, 2, 4, 11, 34, 156.
  const std::size_t expected[] = {1, 2, 4, 11, 34, 156};
  for (std::size_t n = 1; n <= 6; ++n) {
    std::set<std::uint64_t> keys;
    const std::uint32_t pairs = static_cast<std::uint32_t>(n * (n - 1) / 2);
    for (std::uint32_t mask = 0; mask < (1u << pairs); ++mask) keys.insert(canonical_key(from_mask(n, mask)));
    CHECK(keys.size() == expected[n - 1]);
  }
}

TEST_CASE("canonical form is label invariant and reproduces the graph") {
  Rng rng(12);
  for (int rep = 0; rep < 60; ++rep) {
    const std::size_t n = 5 + rep % 7;
    const Graph g = random_graph(n, 0.5, rng);
    std::vector<Vertex> p(n);
    std::iota(p.begin(), p.end(), Vertex{0});
    rng.shuffle(p.begin(), p.end());
    const Graph q = relabel(g, p);
    CHECK(canonical_key(g) == canonical_key(q));
    CHECK(isomorphic(g, q));
    CHECK(canonical_graph(g) == canonical_graph(q));
    CHECK(canonical_graph(g).edge_count() == g.edge_count());
  }
  for (int rep = 0; rep < 60; ++rep) {
    const Graph a = random_graph(6, 0.5, rng);
    const Graph b = random_graph(6, 0.5, rng);
    CHECK(isomorphic(a, b) == brute_isomorphic(a, b));
  }
  CHECK(isomorphic(graph_from_key(6, canonical_key(cycle(6))), cycle(6)));
}

TEST_CASE("brute_ex on small fixtures") {
  const ExSearchResult c6 = brute_ex(cycle(6));
  CHECK(c6.ex_value == 11);
  CHECK(c6.min_missing == 4);
  CHECK(c6.witness.edge_count() == 11);
  CHECK(!exact_pack(c6.witness_missing, cycle(6)).has_value());

  const ExSearchResult pm = brute_ex(Graph(4, {{0, 1}, {2, 3}}));
  CHECK(pm.ex_value == 3);

  CHECK_THROWS_AS(brute_ex(Graph(5, {})), Error);
  CHECK_THROWS_AS(brute_ex(cycle(10)), Error);
}

TEST_CASE("brute_ex equals the maximum over all labeled non-containing hosts") {
  const Graph fixtures[] = {cycle(4), cycle(5), cycle(6), Graph(6, {{0, 1}, {2, 3}, {4, 5}}),
                            Graph(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}}),
                            Graph(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4}, {0, 2}})};
  for (const Graph& h : fixtures) {
    const std::size_t n = h.order();
    const std::uint32_t pairs = static_cast<std::uint32_t>(n * (n - 1) / 2);
    std::size_t best = 0;
    std::set<std::uint64_t> classes;
    for (std::uint32_t mask = 0; mask < (1u << pairs); ++mask) {
      const Graph host = from_mask(n, mask);
      if (host.edge_count() < best) continue;
      if (exact_pack(complement(host), h).has_value()) continue;
      if (host.edge_count() > best) classes.clear();
      best = host.edge_count();
      classes.insert(canonical_key(host));
    }
    CHECK(brute_ex(h).ex_value == best);
    const auto extremal = enumerate_extremal(h);
    CHECK(extremal.size() == classes.size());
    for (const auto& g : extremal) CHECK(classes.count(canonical_key(g)) == 1);
  }
}

TEST_CASE("Ore numbers from an independent Hamiltonicity sweep") {
  for (std::size_t n = 4; n <= 6; ++n) {
    const std::uint32_t pairs = static_cast<std::uint32_t>(n * (n - 1) / 2);
    std::size_t best = 0;
    for (std::uint32_t mask = 0; mask < (1u << pairs); ++mask) {
      const Graph g = from_mask(n, mask);
      if (g.edge_count() > best && !brute_hamiltonian(g)) best = g.edge_count();
    }
    CHECK(best == binomial(n - 1, 2) + 1);
    CHECK(brute_ex(cycle(n)).ex_value == best);
  }
}

TEST_CASE("enumerate_extremal for C6 is the star complement") {
  const auto classes = enumerate_extremal(cycle(6));
  REQUIRE(classes.size() == 1);
  CHECK(isomorphic(classes[0], ore_extremal(6)));
  CHECK_THROWS_AS(enumerate_extremal(cycle(9)), Error);
}
