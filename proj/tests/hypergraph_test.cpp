#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "turan/error.hpp"
#include "turan/hypergraph.hpp"
#include "turan/rng.hpp"

using namespace turan;

namespace {

// Tries all 3^n colorings.
bool brute_3_colorable(const Graph& g) {
  const std::size_t n = g.order();
  std::vector<int> c(n, 0);
  while (true) {
    bool ok = true;
    for (const auto& [u, v] : g.edges()) ok = ok && c[u] != c[v];
    if (ok) return true;
    std::size_t i = 0;
    while (i < n && c[i] == 2) c[i++] = 0;
    if (i == n) return false;
    ++c[i];
  }
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

bool brute_embeds(const Hypergraph3& host, const Hypergraph3& pattern) {
  std::vector<Vertex> p(host.order());
  std::iota(p.begin(), p.end(), Vertex{0});
  do {
    bool ok = true;
    for (const auto& t : pattern.edges()) {
      if (!host.has_edge({p[t[0]], p[t[1]], p[t[2]]})) {
        ok = false;
        break;
      }
    }
    if (ok) return true;
  } while (std::next_permutation(p.begin(), p.end()));
  return false;
}

}  // namespace

TEST_CASE("hypergraph construction and validation") {
  const Triple raw[] = {{2, 0, 1}, {3, 1, 0}};
  const Hypergraph3 hg(4, raw);
  CHECK(hg.edges()[0] == Triple{0, 1, 2});
  CHECK(hg.has_edge({1, 0, 3}));
  CHECK(hg.degree(0) == 2);
  CHECK(hg.degree(2) == 1);
  const Triple bad[] = {{0, 0, 1}};
  CHECK_THROWS_AS(Hypergraph3(3, bad), Error);
  const Triple dup[] = {{0, 1, 2}, {2, 1, 0}};
  CHECK_THROWS_AS(Hypergraph3(3, dup), Error);
  const Triple out[] = {{0, 1, 3}};
  CHECK_THROWS_AS(Hypergraph3(3, out), Error);
}

TEST_CASE("links") {
  const Triple e[] = {{0, 1, 2}, {0, 2, 3}, {1, 2, 3}};
  const Hypergraph3 hg(4, e);
  const LinkGraph l = link(hg, 0);
  CHECK(l.original == std::vector<Vertex>{1, 2, 3});
  CHECK(l.graph.edges() == std::vector<Edge>{{0, 1}, {1, 2}});
}

TEST_CASE("3-colorability agrees with exhaustive coloring") {
  Rng rng(21);
  for (int rep = 0; rep < 200; ++rep) {
    const std::size_t n = 4 + rep % 7;
    const Graph g = random_graph(n, 0.3 + 0.05 * (rep % 8), rng);
    CHECK(is_3_colorable(g) == brute_3_colorable(g));
  }
  // Odd wheel: K4-free, DSatur-hard enough to need backtracking sometimes.
  const Graph w5(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4}, {0, 5}, {1, 5}, {2, 5}, {3, 5}, {4, 5}});
  CHECK(!contains_k4(w5));
  CHECK(!is_3_colorable(w5));
  CHECK(contains_k4(Graph(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}})));
}

TEST_CASE("counterexample H") {
  for (std::size_t s = 2; s <= 4; ++s) {
    const Hypergraph3 h = counterexample_h(s);
    CHECK(h.order() == 5 * s + 1);
    CHECK(h.edge_count() == 10 * s + 1);
    CHECK(links_extremal_zero(h));
    CHECK(counterexample_report(s).all_hold());
  }
  CHECK_THROWS_AS(counterexample_h(1), Error);
}

TEST_CASE("construction T") {
  CHECK(construction_t_parts(16) == std::array<std::size_t, 3>{5, 5, 4});
  CHECK(construction_t(16).edge_count() == 494);
  CHECK(construction_t_edge_count(16) == 494);
  for (std::size_t n = 8; n <= 20; ++n) {
    CHECK(construction_t(n).edge_count() == construction_t_edge_count(n));
    CHECK(construction_t_report(n).all_hold());
  }
  const Hypergraph3 t = construction_t(8);
  CHECK(t.edge_count() == 44);
  CHECK(!links_extremal_zero(t));
}

TEST_CASE("local obstruction at n = 16") {
  const ObstructionReport r = local_obstruction_check(construction_t(16), counterexample_h(3));
  CHECK(r.colorable_in_host == 2);
  CHECK(r.non_colorable_in_pattern == 15);
  CHECK(r.verdict == ObstructionVerdict::NoSpanningCopy);
  CHECK_THROWS_AS(local_obstruction_check(construction_t(16), counterexample_h(2)), Error);
}

TEST_CASE("the obstruction verdict is confirmed by exhaustive search at n = 11") {
  const Hypergraph3 t = construction_t(11);
  const Hypergraph3 h = counterexample_h(2);
  CHECK(local_obstruction_check(t, h).verdict == ObstructionVerdict::NoSpanningCopy);
  CHECK(!find_spanning_embedding(t, h).has_value());
}

TEST_CASE("embedding search agrees with brute force on tiny hypergraphs") {
  Rng rng(31);
  for (int rep = 0; rep < 40; ++rep) {
    const std::size_t n = 5 + rep % 3;
    std::vector<Triple> host_edges, pattern_edges;
    for (Vertex a = 0; a < n; ++a) {
      for (Vertex b = a + 1; b < n; ++b) {
        for (Vertex c = b + 1; c < n; ++c) {
          if (rng.bernoulli(0.6)) host_edges.push_back({a, b, c});
          if (rng.bernoulli(0.25)) pattern_edges.push_back({a, b, c});
        }
      }
    }
    const Hypergraph3 host(n, host_edges);
    const Hypergraph3 pattern(n, pattern_edges);
    const auto found = find_spanning_embedding(host, pattern);
    CHECK(found.has_value() == brute_embeds(host, pattern));
    if (found) {
      for (const auto& t : pattern.edges()) CHECK(host.has_edge({(*found)[t[0]], (*found)[t[1]], (*found)[t[2]]}));
    }
  }
  CHECK_THROWS_AS(find_spanning_embedding(construction_t(16), counterexample_h(3)), Error);
}
