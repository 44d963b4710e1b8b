#include "turan/constructions.hpp"

#include <algorithm>
#include <string>

#include "turan/error.hpp"
#include "turan/oracle.hpp"

namespace turan {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorKind::ParameterOutOfRange, what);
}

Claim count_claim(std::string name, std::size_t expected, std::size_t observed) {
  return {std::move(name), std::to_string(expected), std::to_string(observed),
          expected == observed ? ClaimStatus::FormulaChecked : ClaimStatus::Failed};
}

Claim exact_claim(std::string name, std::string expected, std::string observed, bool holds) {
  return {std::move(name), std::move(expected), std::move(observed),
          holds ? ClaimStatus::Verified : ClaimStatus::Failed};
}

}  // namespace

std::string_view to_string(ClaimStatus status) {
  switch (status) {
    case ClaimStatus::Verified: return "verified";
    case ClaimStatus::FormulaChecked: return "formula-checked";
    case ClaimStatus::Failed: return "failed";
    case ClaimStatus::NotChecked: return "not-checked";
  }
  return "unknown";
}

bool ConstructionReport::all_hold() const {
  return std::none_of(claims.begin(), claims.end(), [](const Claim& c) { return c.status == ClaimStatus::Failed; });
}

const Claim* ConstructionReport::find(std::string_view claim) const {
  for (const auto& c : claims) {
    if (c.name == claim) return &c;
  }
  return nullptr;
}

std::size_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::size_t out = 1;
  for (std::size_t i = 1; i <= k; ++i) out = out * (n - k + i) / i;
  return out;
}

Graph lower_bound_graph(std::size_t n, std::size_t delta) {
  require(n >= 2 && delta >= 1 && delta <= n - 1, "lower-bound needs 1 <= delta <= n - 1");
  std::vector<Edge> edges;
  for (Vertex u = 0; u + 1 < n; ++u) {
    for (Vertex v = u + 1; v + 1 < n; ++v) edges.emplace_back(u, v);
  }
  for (Vertex v = 0; v + 1 < delta; ++v) edges.emplace_back(v, static_cast<Vertex>(n - 1));
  return Graph(n, edges);
}

Graph lower_bound_missing(std::size_t n, std::size_t delta) { return complement(lower_bound_graph(n, delta)); }

TightnessPair tightness_pair(std::size_t k, std::size_t delta, std::size_t exact_limit_k) {
  require(k >= 2, "tightness needs k >= 2");
  require((k * (k + 6) / 2) % k == 0 && (k * (k + 6)) % 2 == 0, "tightness needs k(k+6)/2 divisible by k");
  const std::size_t n = k * (k + 6) / 2 + 1;
  const std::size_t clique = (n - 1) / k;
  require(delta >= 1 && delta + 1 <= clique, "tightness needs 1 <= delta <= (n-1)/k - 1");

  std::vector<Edge> h_edges;
  for (std::size_t c = 0; c < k; ++c) {
    const auto base = static_cast<Vertex>(c * clique);
    for (Vertex a = 0; a < clique; ++a) {
      for (Vertex b = a + 1; b < clique; ++b) h_edges.emplace_back(base + a, base + b);
    }
  }
  const auto apex = static_cast<Vertex>(n - 1);
  for (std::size_t t = 0; t < delta; ++t) {
    h_edges.emplace_back(static_cast<Vertex>((t % k) * clique + t / k), apex);
  }
  std::vector<Edge> missing_edges;
  for (Vertex a = 0; a < k + 2; ++a) {
    for (Vertex b = a + 1; b < k + 2; ++b) missing_edges.emplace_back(a, b);
  }

  TightnessPair out{n, Graph(n, h_edges), Graph{}, Graph(n, missing_edges), {}};
  out.g_full = complement(out.g_missing);

  ConstructionReport& r = out.report;
  r.name = "tightness";
  r.claims.push_back(count_claim("max_degree_h", clique, out.h.max_degree()));
  r.claims.push_back(count_claim("min_degree_h", delta, out.h.min_degree()));
  const std::size_t g_edges = binomial(n, 2) - binomial(k + 2, 2);
  r.claims.push_back(count_claim("edges_g_full", g_edges, out.g_full.edge_count()));
  const std::size_t bound = binomial(n - 1, 2) + delta - 1;
  r.claims.push_back(exact_claim("edges_exceed_formula", "> " + std::to_string(bound),
                                 std::to_string(out.g_full.edge_count()), out.g_full.edge_count() > bound));

  bool alpha_ok = false;
  if (n <= 64) {
    const std::size_t alpha = independence_number(out.h);
    alpha_ok = alpha <= k + 1;
    r.claims.push_back(exact_claim("independence_number_h", "<= " + std::to_string(k + 1), std::to_string(alpha),
                                   alpha_ok));
  } else {
    r.claims.push_back({"independence_number_h", "<= " + std::to_string(k + 1), "", ClaimStatus::NotChecked});
  }
  if (k <= exact_limit_k) {
    const bool packs = exact_pack(out.g_missing, out.h, n, true).has_value();
    r.claims.push_back(exact_claim("h_not_in_g_full", "no spanning copy", packs ? "copy found" : "none (exhaustive)",
                                   !packs));
  } else {
    // Any copy would need an independent set of size k+2 on the removed clique.
    r.claims.push_back({"h_not_in_g_full", "no spanning copy", "independence-number argument",
                        alpha_ok ? ClaimStatus::Verified : ClaimStatus::NotChecked});
  }
  r.graphs = {{"h", out.h}, {"g_full", out.g_full}};
  return out;
}

Graph ore_extremal(std::size_t n) {
  require(n >= 4, "ore needs n >= 4");
  std::vector<Edge> star;
  for (Vertex v = 1; v + 1 < n; ++v) star.emplace_back(0, v);
  return complement(Graph(n, star));
}

Graph second_extremal(std::size_t n) {
  require(n >= 6, "second-extremal needs n >= 6");
  std::vector<Edge> missing;
  for (Vertex v = 2; v + 1 < n; ++v) missing.emplace_back(0, v);
  missing.emplace_back(1, static_cast<Vertex>(n - 1));
  return complement(Graph(n, missing));
}

Graph degree_two_triangle_graph(std::size_t n) {
  require(n >= 6, "degree-two fixture needs n >= 6");
  const std::size_t ring = n - 1;
  std::vector<Edge> edges{{0, 1}, {0, 2}};
  for (std::size_t i = 0; i < ring; ++i) {
    for (std::size_t step : {std::size_t{1}, std::size_t{2}}) {
      const auto a = static_cast<Vertex>(1 + i);
      const auto b = static_cast<Vertex>(1 + (i + step) % ring);
      edges.emplace_back(std::min(a, b), std::max(a, b));
    }
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return Graph(n, edges);
}

ConstructionReport lower_bound_report(std::size_t n, std::size_t delta) {
  ConstructionReport r;
  r.name = "lower-bound";
  Graph g = lower_bound_graph(n, delta);
  r.claims.push_back(count_claim("edges", binomial(n - 1, 2) + delta - 1, g.edge_count()));
  r.claims.push_back(exact_claim("min_degree", std::to_string(delta - 1), std::to_string(g.min_degree()),
                                 g.min_degree() == delta - 1));
  r.claims.push_back(exact_claim("no_spanning_h_with_min_degree_delta", "min degree < delta",
                                 std::to_string(g.min_degree()), g.min_degree() < delta));
  r.graphs = {{"graph", std::move(g)}};
  return r;
}

ConstructionReport ore_report(std::size_t n) {
  ConstructionReport r;
  r.name = "ore";
  Graph g = ore_extremal(n);
  r.claims.push_back(count_claim("edges", binomial(n - 1, 2) + 1, g.edge_count()));
  if (n <= kHamiltonLimit) {
    const bool ham = is_hamiltonian(g);
    r.claims.push_back(exact_claim("non_hamiltonian", "false", ham ? "true" : "false", !ham));
  } else {
    r.claims.push_back({"non_hamiltonian", "false", "", ClaimStatus::NotChecked});
  }
  r.graphs = {{"graph", std::move(g)}};
  return r;
}

ConstructionReport second_extremal_report(std::size_t n) {
  ConstructionReport r;
  r.name = "second-extremal";
  Graph g = second_extremal(n);
  r.claims.push_back(count_claim("edges", binomial(n - 1, 2) + 1, g.edge_count()));
  r.claims.push_back(count_claim("edges_match_ore", ore_extremal(n).edge_count(), g.edge_count()));
  r.claims.push_back(exact_claim("apex_degree", "2", std::to_string(g.degree(0)), g.degree(0) == 2));
  const auto nb = g.neighbors(0);
  const bool apart = nb.size() == 2 && !g.has_edge(nb[0], nb[1]);
  r.claims.push_back(exact_claim("apex_neighbors_nonadjacent", "true", apart ? "true" : "false", apart));
  if (n <= 12) {
    const Graph h = degree_two_triangle_graph(n);
    const bool packs = exact_pack(complement(g), h, 12).has_value();
    r.claims.push_back(exact_claim("fixture_h_not_contained", "no spanning copy",
                                   packs ? "copy found" : "none (exhaustive)", !packs));
  } else {
    r.claims.push_back({"fixture_h_not_contained", "no spanning copy", "", ClaimStatus::NotChecked});
  }
  r.graphs = {{"graph", std::move(g)}};
  return r;
}

}  // namespace turan
