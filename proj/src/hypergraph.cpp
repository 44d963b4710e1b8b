#include "turan/hypergraph.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "turan/error.hpp"

namespace turan {

namespace {

Triple sorted(Triple t) {
  std::sort(t.begin(), t.end());
  return t;
}

std::vector<VertexSet> bitset_rows(const Graph& g) {
  std::vector<VertexSet> rows(g.order(), VertexSet(g.order()));
  for (Vertex v = 0; v < g.order(); ++v) {
    for (Vertex u : g.neighbors(v)) rows[v].insert(u);
  }
  return rows;
}

/// DSatur greedy; returns the number of colors used.
std::size_t dsatur_colors(const Graph& g) {
  const std::size_t n = g.order();
  std::vector<int> color(n, -1);
  std::vector<std::uint64_t> seen(n, 0);  // colors present around v (first 64)
  std::size_t used = 0;
  for (std::size_t step = 0; step < n; ++step) {
    std::size_t pick = n;
    int best_sat = -1;
    for (Vertex v = 0; v < n; ++v) {
      if (color[v] >= 0) continue;
      const int sat = std::popcount(seen[v]);
      if (sat > best_sat || (sat == best_sat && g.degree(v) > g.degree(static_cast<Vertex>(pick)))) {
        pick = v;
        best_sat = sat;
      }
    }
    const int c = std::countr_one(seen[pick]);
    if (c >= 64) return 65;
    color[pick] = c;
    used = std::max(used, static_cast<std::size_t>(c) + 1);
    for (Vertex u : g.neighbors(static_cast<Vertex>(pick))) seen[u] |= std::uint64_t{1} << c;
  }
  return used;
}

class ThreeColoring {
 public:
  explicit ThreeColoring(const Graph& g) : n_(g.order()), adj_(n_, 0), color_(n_, -1) {
    for (const auto& [u, v] : g.edges()) {
      adj_[u] |= std::uint64_t{1} << v;
      adj_[v] |= std::uint64_t{1} << u;
    }
  }

  bool run() { return assign(0, 0); }

 private:
  std::uint64_t forbidden(std::size_t v) const {
    std::uint64_t mask = 0;
    for (std::uint64_t bits = adj_[v]; bits != 0; bits &= bits - 1) {
      const int c = color_[static_cast<std::size_t>(std::countr_zero(bits))];
      if (c >= 0) mask |= std::uint64_t{1} << c;
    }
    return mask;
  }

  bool assign(std::size_t done, int max_color) {
    if (done == n_) return true;
    std::size_t pick = n_;
    int best = -1;
    for (std::size_t v = 0; v < n_; ++v) {
      if (color_[v] >= 0) continue;
      const int sat = std::popcount(forbidden(v));
      if (sat > best) {
        pick = v;
        best = sat;
      }
    }
    const std::uint64_t blocked = forbidden(pick);
    // New colors are introduced in order, which removes color permutations.
    for (int c = 0; c < 3 && c <= max_color; ++c) {
      if (blocked & (std::uint64_t{1} << c)) continue;
      color_[pick] = c;
      if (assign(done + 1, std::max(max_color, c + 1))) return true;
    }
    color_[pick] = -1;
    return false;
  }

  std::size_t n_;
  std::vector<std::uint64_t> adj_;
  std::vector<int> color_;
};

class EmbeddingSearch {
 public:
  EmbeddingSearch(const Hypergraph3& host, const Hypergraph3& pattern)
      : n_(host.order()), host_edges_(n_ * n_ * n_, false), host_deg_(n_), pattern_deg_(n_), image_(n_, kNoImage) {
    for (const auto& t : host.edges()) {
      for (auto p : permutations(t)) host_edges_[index(p)] = true;
    }
    for (Vertex v = 0; v < n_; ++v) {
      host_deg_[v] = host.degree(v);
      pattern_deg_[v] = pattern.degree(v);
    }
    incident_.resize(n_);
    for (const auto& t : pattern.edges()) {
      for (Vertex v : t) incident_[v].push_back(t);
    }
    // Place pattern vertices so each new one closes as many edges as possible.
    std::vector<bool> placed(n_, false);
    for (std::size_t step = 0; step < n_; ++step) {
      std::size_t pick = n_;
      std::size_t best_closed = 0;
      for (Vertex v = 0; v < n_; ++v) {
        if (placed[v]) continue;
        std::size_t closed = 0;
        for (const auto& t : incident_[v]) {
          closed += std::all_of(t.begin(), t.end(), [&](Vertex x) { return x == v || placed[x]; }) ? 1 : 0;
        }
        if (pick == n_ || closed > best_closed ||
            (closed == best_closed && pattern_deg_[v] > pattern_deg_[pick])) {
          pick = v;
          best_closed = closed;
        }
      }
      placed[pick] = true;
      order_.push_back(static_cast<Vertex>(pick));
    }
  }

  std::optional<std::vector<Vertex>> run() {
    std::vector<bool> used(n_, false);
    if (descend(0, used)) return image_;
    return std::nullopt;
  }

 private:
  static constexpr Vertex kNoImage = ~Vertex{0};

  static std::array<Triple, 6> permutations(Triple t) {
    return {{{t[0], t[1], t[2]}, {t[0], t[2], t[1]}, {t[1], t[0], t[2]},
             {t[1], t[2], t[0]}, {t[2], t[0], t[1]}, {t[2], t[1], t[0]}}};
  }
  std::size_t index(const Triple& t) const { return (t[0] * n_ + t[1]) * n_ + t[2]; }

  bool descend(std::size_t depth, std::vector<bool>& used) {
    if (depth == n_) return true;
    const Vertex v = order_[depth];
    for (Vertex w = 0; w < n_; ++w) {
      if (used[w] || host_deg_[w] < pattern_deg_[v]) continue;
      image_[v] = w;
      bool ok = true;
      for (const auto& t : incident_[v]) {
        if (image_[t[0]] == kNoImage || image_[t[1]] == kNoImage || image_[t[2]] == kNoImage) continue;
        if (!host_edges_[index({image_[t[0]], image_[t[1]], image_[t[2]]})]) {
          ok = false;
          break;
        }
      }
      if (ok) {
        used[w] = true;
        if (descend(depth + 1, used)) return true;
        used[w] = false;
      }
      image_[v] = kNoImage;
    }
    return false;
  }

  std::size_t n_;
  std::vector<bool> host_edges_;
  std::vector<std::size_t> host_deg_;
  std::vector<std::size_t> pattern_deg_;
  std::vector<std::vector<Triple>> incident_;
  std::vector<Vertex> order_;
  std::vector<Vertex> image_;
};

}  // namespace

Hypergraph3::Hypergraph3(std::size_t n, std::span<const Triple> edges) : n_(n) {
  edges_.reserve(edges.size());
  for (const auto& raw : edges) {
    const Triple t = sorted(raw);
    if (t[2] >= n) throw Error(ErrorKind::InvalidGraph, "hyperedge vertex " + std::to_string(t[2]) + " out of range");
    if (t[0] == t[1] || t[1] == t[2]) {
      throw Error(ErrorKind::InvalidGraph, "hyperedge with repeated vertex " + std::to_string(t[1]));
    }
    edges_.push_back(t);
  }
  std::sort(edges_.begin(), edges_.end());
  if (auto dup = std::adjacent_find(edges_.begin(), edges_.end()); dup != edges_.end()) {
    throw Error(ErrorKind::InvalidGraph, "repeated hyperedge {" + std::to_string((*dup)[0]) + ", " +
                                             std::to_string((*dup)[1]) + ", " + std::to_string((*dup)[2]) + "}");
  }
}

std::size_t Hypergraph3::degree(Vertex v) const {
  return static_cast<std::size_t>(std::count_if(edges_.begin(), edges_.end(), [&](const Triple& t) {
    return t[0] == v || t[1] == v || t[2] == v;
  }));
}

bool Hypergraph3::has_edge(Triple t) const { return std::binary_search(edges_.begin(), edges_.end(), sorted(t)); }

LinkGraph link(const Hypergraph3& hg, Vertex v) {
  const std::size_t n = hg.order();
  if (v >= n) throw Error(ErrorKind::VertexOutOfRange, "vertex " + std::to_string(v) + " not in hypergraph");
  LinkGraph out;
  std::vector<Vertex> local(n, 0);
  for (Vertex u = 0; u < n; ++u) {
    if (u == v) continue;
    local[u] = static_cast<Vertex>(out.original.size());
    out.original.push_back(u);
  }
  std::vector<Edge> edges;
  for (const auto& t : hg.edges()) {
    if (t[0] != v && t[1] != v && t[2] != v) continue;
    std::array<Vertex, 2> rest{};
    std::size_t k = 0;
    for (Vertex x : t) {
      if (x != v) rest[k++] = local[x];
    }
    edges.emplace_back(rest[0], rest[1]);
  }
  out.graph = Graph(n - 1, edges);
  return out;
}

Hypergraph3 counterexample_h(std::size_t s) {
  if (s < 2) throw Error(ErrorKind::ParameterOutOfRange, "hyper-h needs s >= 2");
  const std::size_t n = 5 * s + 1;
  std::vector<Triple> edges;
  for (std::size_t block = 0; block < s; ++block) {
    const auto base = static_cast<Vertex>(5 * block);
    for (Vertex a = 0; a < 5; ++a) {
      for (Vertex b = a + 1; b < 5; ++b) {
        for (Vertex c = b + 1; c < 5; ++c) edges.push_back({base + a, base + b, base + c});
      }
    }
  }
  edges.push_back({0, 1, static_cast<Vertex>(5 * s)});
  return Hypergraph3(n, edges);
}

std::array<std::size_t, 3> construction_t_parts(std::size_t n) {
  const std::size_t u = n - 2;
  std::array<std::size_t, 3> parts{u / 3, u / 3, u / 3};
  for (std::size_t i = 0; i < u % 3; ++i) ++parts[i];
  return parts;
}

std::size_t construction_t_edge_count(std::size_t n) {
  const auto p = construction_t_parts(n);
  return binomial(n - 2, 3) + 2 * (p[0] * p[1] + p[0] * p[2] + p[1] * p[2]);
}

Hypergraph3 construction_t(std::size_t n) {
  if (n < 8) throw Error(ErrorKind::ParameterOutOfRange, "hyper-t needs n >= 8");
  const auto parts = construction_t_parts(n);
  const std::size_t u = n - 2;
  std::vector<std::size_t> part_of(u);
  for (std::size_t v = 0, p = 0, filled = 0; v < u; ++v) {
    if (filled == parts[p]) {
      ++p;
      filled = 0;
    }
    part_of[v] = p;
    ++filled;
  }
  std::vector<Triple> edges;
  edges.reserve(construction_t_edge_count(n));
  for (Vertex a = 0; a < u; ++a) {
    for (Vertex b = a + 1; b < u; ++b) {
      for (Vertex c = b + 1; c < u; ++c) edges.push_back({a, b, c});
      if (part_of[a] != part_of[b]) {
        edges.push_back({a, b, static_cast<Vertex>(n - 2)});
        edges.push_back({a, b, static_cast<Vertex>(n - 1)});
      }
    }
  }
  return Hypergraph3(n, edges);
}

bool contains_k4(const Graph& g) {
  const auto rows = bitset_rows(g);
  for (const auto& [u, v] : g.edges()) {
    const VertexSet common = rows[u] & rows[v];
    for (Vertex w = common.next(v + 1); w < g.order(); w = common.next(w + 1)) {
      if (rows[w].intersects(common)) return true;
    }
  }
  return false;
}

bool is_3_colorable(const Graph& g) {
  if (contains_k4(g)) return false;
  if (dsatur_colors(g) <= 3) return true;
  if (g.order() > 40) {
    throw Error(ErrorKind::InstanceTooLarge, "exact 3-coloring supports at most 40 vertices");
  }
  return ThreeColoring(g).run();
}

ObstructionReport local_obstruction_check(const Hypergraph3& host, const Hypergraph3& pattern) {
  const std::size_t n = host.order();
  if (pattern.order() != n) throw Error(ErrorKind::SizeMismatch, "host and pattern orders differ");
  ObstructionReport r{ObstructionVerdict::Inconclusive, 0, 0};
  for (Vertex v = 0; v < n; ++v) {
    if (is_3_colorable(link(host, v).graph)) ++r.colorable_in_host;
    if (!is_3_colorable(link(pattern, v).graph)) ++r.non_colorable_in_pattern;
  }
  if (r.non_colorable_in_pattern > n - r.colorable_in_host) r.verdict = ObstructionVerdict::NoSpanningCopy;
  return r;
}

bool links_extremal_zero(const Hypergraph3& hg) {
  for (Vertex v = 0; v < hg.order(); ++v) {
    if (hg.degree(v) == 1) return true;
  }
  return false;
}

std::optional<std::vector<Vertex>> find_spanning_embedding(const Hypergraph3& host, const Hypergraph3& pattern,
                                                           std::size_t limit) {
  if (host.order() != pattern.order()) throw Error(ErrorKind::SizeMismatch, "host and pattern orders differ");
  if (host.order() > limit) {
    throw Error(ErrorKind::InstanceTooLarge,
                "spanning embedding search supports at most " + std::to_string(limit) + " vertices");
  }
  if (pattern.edge_count() > host.edge_count()) return std::nullopt;
  return EmbeddingSearch(host, pattern).run();
}

ConstructionReport counterexample_report(std::size_t s) {
  ConstructionReport r;
  r.name = "hyper-h";
  const Hypergraph3 h = counterexample_h(s);
  const std::size_t n = h.order();
  auto claim = [&](std::string name, std::string expected, std::string observed, bool ok, bool exact = true) {
    r.claims.push_back({std::move(name), std::move(expected), std::move(observed),
                        ok ? (exact ? ClaimStatus::Verified : ClaimStatus::FormulaChecked) : ClaimStatus::Failed});
  };
  claim("order", std::to_string(5 * s + 1), std::to_string(n), n == 5 * s + 1, false);
  claim("edges", std::to_string(10 * s + 1), std::to_string(h.edge_count()), h.edge_count() == 10 * s + 1, false);
  const bool zero = links_extremal_zero(h);
  claim("links_extremal_zero", "true", zero ? "true" : "false", zero);
  if (s <= 6) {
    std::size_t non_colorable = 0;
    for (Vertex v = 0; v + 1 < n; ++v) non_colorable += is_3_colorable(link(h, v).graph) ? 0 : 1;
    claim("non_3_colorable_links", std::to_string(n - 1), std::to_string(non_colorable), non_colorable == n - 1);
    const std::size_t x_link = link(h, static_cast<Vertex>(n - 1)).graph.edge_count();
    claim("apex_link_edges", "1", std::to_string(x_link), x_link == 1);
  }
  const Hypergraph3 t = construction_t(n);
  const std::size_t t_edges = t.edge_count();
  // 3 * |E(T)| >= 3 C(n-2, 3) + 4 C(n-2, 2), kept in integers.
  const std::size_t lhs = 3 * t_edges;
  const std::size_t rhs = 3 * binomial(n - 2, 3) + 4 * binomial(n - 2, 2);
  claim("t_edges_lower_bound", ">= " + std::to_string(rhs) + "/3", std::to_string(t_edges), lhs >= rhs);
  claim("t_edges_exceed_links_bound", "> " + std::to_string(binomial(n - 1, 3)), std::to_string(t_edges),
        t_edges > binomial(n - 1, 3));
  const ObstructionReport obstruction = local_obstruction_check(t, h);
  const bool blocked = obstruction.verdict == ObstructionVerdict::NoSpanningCopy;
  claim("t_has_no_spanning_h", "NoSpanningCopy", blocked ? "NoSpanningCopy" : "Inconclusive", blocked);
  return r;
}

ConstructionReport construction_t_report(std::size_t n) {
  ConstructionReport r;
  r.name = "hyper-t";
  const Hypergraph3 t = construction_t(n);
  const std::size_t edges = t.edge_count();
  const std::size_t expected = construction_t_edge_count(n);
  r.claims.push_back({"edges", std::to_string(expected), std::to_string(edges),
                      edges == expected ? ClaimStatus::FormulaChecked : ClaimStatus::Failed});
  const std::size_t rhs = 3 * binomial(n - 2, 3) + 4 * binomial(n - 2, 2);
  r.claims.push_back({"edges_lower_bound", ">= " + std::to_string(rhs) + "/3", std::to_string(edges),
                      3 * edges >= rhs ? ClaimStatus::Verified : ClaimStatus::Failed});
  for (Vertex apex : {static_cast<Vertex>(n - 2), static_cast<Vertex>(n - 1)}) {
    const bool ok = is_3_colorable(link(t, apex).graph);
    r.claims.push_back({"link_3_colorable_" + std::to_string(apex), "true", ok ? "true" : "false",
                        ok ? ClaimStatus::Verified : ClaimStatus::Failed});
  }
  return r;
}

}  // namespace turan
