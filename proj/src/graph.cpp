#include "turan/graph.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <queue>
#include <string>

#include "turan/error.hpp"

namespace turan {

Graph::Graph(std::size_t n, std::span<const Edge> edges) : n_(n), offsets_(n + 1, 0) {
  for (const auto& [u, v] : edges) {
    if (u >= n || v >= n) {
      throw Error(ErrorKind::InvalidGraph,
                  "edge (" + std::to_string(u) + ", " + std::to_string(v) + ") out of range for n = " + std::to_string(n));
    }
    if (u == v) throw Error(ErrorKind::InvalidGraph, "self-loop at vertex " + std::to_string(u));
    ++offsets_[u + 1];
    ++offsets_[v + 1];
  }
  std::partial_sum(offsets_.begin(), offsets_.end(), offsets_.begin());
  targets_.resize(offsets_[n]);
  std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
  for (const auto& [u, v] : edges) {
    targets_[cursor[u]++] = v;
    targets_[cursor[v]++] = u;
  }
  for (std::size_t v = 0; v < n; ++v) {
    auto first = targets_.begin() + static_cast<std::ptrdiff_t>(offsets_[v]);
    auto last = targets_.begin() + static_cast<std::ptrdiff_t>(offsets_[v + 1]);
    std::sort(first, last);
    if (auto dup = std::adjacent_find(first, last); dup != last) {
      throw Error(ErrorKind::InvalidGraph,
                  "repeated edge (" + std::to_string(v) + ", " + std::to_string(*dup) + ")");
    }
  }
}

bool Graph::has_edge(Vertex u, Vertex v) const {
  if (u >= n_ || v >= n_) return false;
  if (degree(u) > degree(v)) std::swap(u, v);
  auto nb = neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

std::size_t Graph::min_degree() const {
  std::size_t best = n_ == 0 ? 0 : degree(0);
  for (Vertex v = 1; v < n_; ++v) best = std::min(best, degree(v));
  return best;
}

std::size_t Graph::max_degree() const {
  std::size_t best = 0;
  for (Vertex v = 0; v < n_; ++v) best = std::max(best, degree(v));
  return best;
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count());
  for (Vertex u = 0; u < n_; ++u) {
    for (Vertex v : neighbors(u)) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

Graph complement(const Graph& g) {
  const std::size_t n = g.order();
  std::vector<Edge> edges;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) {
      if (!g.has_edge(u, v)) edges.emplace_back(u, v);
    }
  }
  return Graph(n, edges);
}

std::vector<Vertex> degree_sequence_order(const Graph& g) {
  std::vector<Vertex> order(g.order());
  std::iota(order.begin(), order.end(), Vertex{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Vertex a, Vertex b) { return g.degree(a) > g.degree(b); });
  return order;
}

VertexSet closed_neighborhood(const Graph& g, const VertexSet& w) {
  VertexSet out = w;
  w.for_each([&](Vertex v) {
    for (Vertex u : g.neighbors(v)) out.insert(u);
  });
  return out;
}

VertexSet greedy_independent_set(const Graph& g, const VertexSet& candidates,
                                 std::optional<std::size_t> degree_cap) {
  const std::size_t n = g.order();
  VertexSet alive(n);
  candidates.for_each([&](Vertex v) {
    if (v < n && (!degree_cap || g.degree(v) <= *degree_cap)) alive.insert(v);
  });

  std::vector<std::uint32_t> induced(n, 0);
  using Entry = std::pair<std::uint32_t, Vertex>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
  alive.for_each([&](Vertex v) {
    std::uint32_t d = 0;
    for (Vertex u : g.neighbors(v)) d += alive.contains(u) ? 1u : 0u;
    induced[v] = d;
    heap.emplace(d, v);
  });

  VertexSet chosen(n);
  // Stale heap entries are skipped: a vertex is current only while alive and
  // its recorded degree matches.
  while (!heap.empty()) {
    const auto [d, v] = heap.top();
    heap.pop();
    if (!alive.contains(v) || induced[v] != d) continue;
    chosen.insert(v);
    alive.erase(v);
    for (Vertex u : g.neighbors(v)) {
      if (!alive.contains(u)) continue;
      alive.erase(u);
      for (Vertex x : g.neighbors(u)) {
        if (alive.contains(x)) heap.emplace(--induced[x], x);
      }
    }
  }
  return chosen;
}

bool is_independent(const Graph& g, const VertexSet& s) {
  bool ok = true;
  s.for_each([&](Vertex v) {
    for (Vertex u : g.neighbors(v)) {
      if (s.contains(u)) ok = false;
    }
  });
  return ok;
}

}  // namespace turan
