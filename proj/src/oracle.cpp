#include "turan/oracle.hpp"

#include <algorithm>
#include <bit>
#include <set>
#include <string>

#include "turan/error.hpp"

namespace turan {

namespace {

using Masks = std::vector<std::uint64_t>;

constexpr std::uint64_t bit(std::size_t i) { return std::uint64_t{1} << i; }

std::uint64_t full_mask(std::size_t n) { return n == 64 ? ~std::uint64_t{0} : bit(n) - 1; }

Masks masks_of(const Graph& g) {
  Masks adj(g.order(), 0);
  for (const auto& [u, v] : g.edges()) {
    adj[u] |= bit(v);
    adj[v] |= bit(u);
  }
  return adj;
}

void require_at_most(std::size_t n, std::size_t limit, const char* what) {
  if (n > limit) {
    throw Error(ErrorKind::InstanceTooLarge,
                std::string(what) + " supports at most " + std::to_string(limit) + " vertices, got " + std::to_string(n));
  }
}

template <typename Fn>
void for_bits(std::uint64_t bits, Fn&& fn) {
  while (bits != 0) {
    fn(static_cast<std::size_t>(std::countr_zero(bits)));
    bits &= bits - 1;
  }
}

/// Assigns H-vertices one at a time to G-vertices so that no placed H-edge
/// lands on a G-edge.
class PackSearch {
 public:
  PackSearch(const Graph& g, const Graph& h)
      : n_(g.order()), gadj_(masks_of(g)), hadj_(masks_of(h)), host_of_(n_, 0), assign_(n_, 0) {
    // u can host w only if w's H-degree fits into u's non-neighborhood.
    for (std::size_t u = 0; u < n_; ++u) {
      for (std::size_t w = 0; w < n_; ++w) {
        if (h.degree(static_cast<Vertex>(w)) + g.degree(static_cast<Vertex>(u)) <= n_ - 1) host_of_[u] |= bit(w);
      }
    }
    // Most-constrained first: most placed neighbors, then highest degree.
    std::uint64_t placed = 0;
    for (std::size_t step = 0; step < n_; ++step) {
      std::size_t best = n_;
      int best_links = -1;
      std::size_t best_degree = 0;
      for (std::size_t w = 0; w < n_; ++w) {
        if (placed & bit(w)) continue;
        const int links = std::popcount(hadj_[w] & placed);
        const std::size_t deg = h.degree(static_cast<Vertex>(w));
        if (links > best_links || (links == best_links && deg > best_degree)) {
          best = w;
          best_links = links;
          best_degree = deg;
        }
      }
      order_.push_back(best);
      placed |= bit(best);
    }
  }

  std::optional<PackingMap> run() {
    if (n_ == 0) return PackingMap{};
    if (!feasible(0, full_mask(n_))) return std::nullopt;
    if (!descend(0, 0, 0)) return std::nullopt;
    PackingMap f;
    f.forward.assign(n_, 0);
    for (std::size_t w = 0; w < n_; ++w) f.forward[assign_[w]] = static_cast<Vertex>(w);
    return f;
  }

 private:
  /// Every unused G-vertex must still be able to host some unplaced H-vertex.
  bool feasible(std::uint64_t used, std::uint64_t unplaced) const {
    const std::uint64_t free_g = full_mask(n_) & ~used;
    bool ok = true;
    for_bits(free_g, [&](std::size_t u) { ok = ok && (host_of_[u] & unplaced) != 0; });
    return ok;
  }

  bool descend(std::size_t depth, std::uint64_t used, std::uint64_t placed) {
    if (depth == n_) return true;
    const std::size_t w = order_[depth];
    std::uint64_t blocked = 0;
    for_bits(hadj_[w] & placed, [&](std::size_t x) { blocked |= gadj_[assign_[x]]; });
    std::uint64_t candidates = full_mask(n_) & ~used & ~blocked;
    while (candidates != 0) {
      const auto u = static_cast<std::size_t>(std::countr_zero(candidates));
      candidates &= candidates - 1;
      if (!(host_of_[u] & bit(w))) continue;
      assign_[w] = u;
      const std::uint64_t now_used = used | bit(u);
      const std::uint64_t now_placed = placed | bit(w);
      if (feasible(now_used, full_mask(n_) & ~now_placed) && descend(depth + 1, now_used, now_placed)) return true;
    }
    return false;
  }

  std::size_t n_;
  Masks gadj_;
  Masks hadj_;
  Masks host_of_;
  std::vector<std::size_t> assign_;
  std::vector<std::size_t> order_;
};

std::size_t mis(const Masks& adj, std::uint64_t cand, std::size_t taken, std::size_t& best) {
  if (cand == 0) {
    best = std::max(best, taken);
    return best;
  }
  if (taken + static_cast<std::size_t>(std::popcount(cand)) <= best) return best;
  // A vertex of degree <= 1 inside cand can always be taken.
  std::size_t pick = 64;
  int pick_deg = 65;
  for_bits(cand, [&](std::size_t v) {
    const int d = std::popcount(adj[v] & cand);
    if (d < pick_deg) {
      pick = v;
      pick_deg = d;
    }
  });
  if (pick_deg <= 1) return mis(adj, cand & ~bit(pick) & ~adj[pick], taken + 1, best);
  // Branch on a maximum-degree vertex: exclude it, or take it.
  std::size_t hub = 0;
  int hub_deg = -1;
  for_bits(cand, [&](std::size_t v) {
    const int d = std::popcount(adj[v] & cand);
    if (d > hub_deg) {
      hub = v;
      hub_deg = d;
    }
  });
  mis(adj, cand & ~bit(hub) & ~adj[hub], taken + 1, best);
  mis(adj, cand & ~bit(hub), taken, best);
  return best;
}

/// Canonical labeling by individualization and refinement. Refinement ranks
/// (color, sorted neighbor colors) signatures, so it does not depend on the
/// input labeling; every branch is explored except among mutual twins, whose
/// transpositions are automorphisms.
class Canonizer {
 public:
  Canonizer(std::size_t n, const Masks& adj) : n_(n), adj_(adj) {}

  std::uint64_t run() {
    std::vector<std::size_t> colors(n_, 0);
    for (std::size_t v = 0; v < n_; ++v) colors[v] = static_cast<std::size_t>(std::popcount(adj_[v]));
    search(rank(colors));
    return best_;
  }

 private:
  std::vector<std::size_t> rank(const std::vector<std::size_t>& keys) const {
    std::vector<std::size_t> sorted = keys;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    std::vector<std::size_t> out(n_);
    for (std::size_t v = 0; v < n_; ++v) {
      out[v] = static_cast<std::size_t>(std::lower_bound(sorted.begin(), sorted.end(), keys[v]) - sorted.begin());
    }
    return out;
  }

  std::size_t classes(const std::vector<std::size_t>& colors) const {
    return colors.empty() ? 0 : *std::max_element(colors.begin(), colors.end()) + 1;
  }

  std::vector<std::size_t> refine(std::vector<std::size_t> colors) const {
    while (true) {
      std::vector<std::vector<std::size_t>> sig(n_);
      for (std::size_t v = 0; v < n_; ++v) {
        sig[v].push_back(colors[v]);
        std::vector<std::size_t> around;
        for_bits(adj_[v], [&](std::size_t u) { around.push_back(colors[u]); });
        std::sort(around.begin(), around.end());
        sig[v].insert(sig[v].end(), around.begin(), around.end());
      }
      std::vector<std::vector<std::size_t>> sorted = sig;
      std::sort(sorted.begin(), sorted.end());
      sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
      std::vector<std::size_t> next(n_);
      for (std::size_t v = 0; v < n_; ++v) {
        next[v] = static_cast<std::size_t>(std::lower_bound(sorted.begin(), sorted.end(), sig[v]) - sorted.begin());
      }
      if (classes(next) == classes(colors)) return next;
      colors = std::move(next);
    }
  }

  void search(const std::vector<std::size_t>& start) {
    const std::vector<std::size_t> colors = refine(start);
    if (classes(colors) == n_) {
      std::uint64_t key = 0;
      for (std::size_t u = 0; u < n_; ++u) {
        for_bits(adj_[u], [&](std::size_t v) {
          const std::size_t a = std::min(colors[u], colors[v]);
          const std::size_t b = std::max(colors[u], colors[v]);
          key |= bit(pair_index(a, b));
        });
      }
      if (!have_best_ || key < best_) {
        best_ = key;
        have_best_ = true;
      }
      return;
    }
    // Smallest non-singleton cell, lowest color on ties.
    std::vector<std::size_t> sizes(classes(colors), 0);
    for (std::size_t c : colors) ++sizes[c];
    std::size_t cell = sizes.size();
    for (std::size_t c = 0; c < sizes.size(); ++c) {
      if (sizes[c] > 1 && (cell == sizes.size() || sizes[c] < sizes[cell])) cell = c;
    }
    std::vector<std::size_t> members;
    for (std::size_t v = 0; v < n_; ++v) {
      if (colors[v] == cell) members.push_back(v);
    }
    bool twins = true;
    for (std::size_t a = 0; a < members.size() && twins; ++a) {
      for (std::size_t b = a + 1; b < members.size() && twins; ++b) {
        const std::size_t x = members[a];
        const std::size_t y = members[b];
        twins = (adj_[x] & ~bit(y)) == (adj_[y] & ~bit(x));
      }
    }
    const std::size_t branches = twins ? 1 : members.size();
    for (std::size_t i = 0; i < branches; ++i) {
      std::vector<std::size_t> next(n_);
      for (std::size_t v = 0; v < n_; ++v) {
        next[v] = 2 * colors[v] + ((colors[v] == cell && v != members[i]) ? 1 : 0);
      }
      search(rank(next));
    }
  }

  std::size_t pair_index(std::size_t a, std::size_t b) const {
    // Row-major index of (a, b), a < b, in the strict upper triangle.
    return a * n_ - a * (a + 1) / 2 + (b - a - 1);
  }

  std::size_t n_;
  const Masks& adj_;
  std::uint64_t best_ = 0;
  bool have_best_ = false;
};

std::uint64_t canonical_masks(std::size_t n, const Masks& adj) {
  require_at_most(n, kCanonicalLimit, "canonical_key");
  return Canonizer(n, adj).run();
}

Masks masks_from_key(std::size_t n, std::uint64_t key) {
  Masks adj(n, 0);
  std::size_t k = 0;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b, ++k) {
      if (key & bit(k)) {
        adj[a] |= bit(b);
        adj[b] |= bit(a);
      }
    }
  }
  return adj;
}

/// Canonical keys of missing-edge graphs with the fewest edges that do not
/// pack with h; `all` keeps every such class instead of the first.
std::pair<std::size_t, std::vector<std::uint64_t>> failing_level(const Graph& h, bool all) {
  const std::size_t n = h.order();
  if (h.edge_count() == 0) {
    throw Error(ErrorKind::ParameterOutOfRange, "h has no edges, so every host contains it");
  }
  std::set<std::uint64_t> level{canonical_masks(n, Masks(n, 0))};
  for (std::size_t m = 0;; ++m) {
    std::vector<std::uint64_t> failing;
    for (std::uint64_t key : level) {
      if (!exact_pack(graph_from_key(n, key), h)) {
        failing.push_back(key);
        if (!all) break;
      }
    }
    if (!failing.empty()) return {m, failing};
    std::set<std::uint64_t> next;
    const std::size_t pairs = n * (n - 1) / 2;
    for (std::uint64_t key : level) {
      for (std::size_t k = 0; k < pairs; ++k) {
        if (key & bit(k)) continue;
        next.insert(canonical_masks(n, masks_from_key(n, key | bit(k))));
      }
    }
    level = std::move(next);
  }
}

}  // namespace

std::optional<PackingMap> exact_pack(const Graph& g, const Graph& h, std::size_t soft_limit, bool force) {
  if (g.order() != h.order()) {
    throw Error(ErrorKind::SizeMismatch, "exact_pack needs graphs of equal order");
  }
  require_at_most(g.order(), kExactPackHardLimit, "exact_pack");
  if (!force) require_at_most(g.order(), soft_limit, "exact_pack");
  return PackSearch(g, h).run();
}

bool is_hamiltonian(const Graph& g) {
  const std::size_t n = g.order();
  require_at_most(n, kHamiltonLimit, "is_hamiltonian");
  if (n < 3) return false;
  const Masks adj = masks_of(g);
  // ends[mask]: endpoints of paths from vertex 0 covering exactly mask.
  std::vector<std::uint32_t> ends(std::size_t{1} << n, 0);
  ends[1] = 1;
  for (std::size_t mask = 1; mask < ends.size(); mask += 2) {
    const std::uint32_t here = ends[mask];
    if (here == 0) continue;
    for_bits(here, [&](std::size_t v) {
      for_bits(adj[v] & ~static_cast<std::uint64_t>(mask), [&](std::size_t u) {
        ends[mask | bit(u)] |= static_cast<std::uint32_t>(bit(u));
      });
    });
  }
  return (ends.back() & static_cast<std::uint32_t>(adj[0])) != 0;
}

std::size_t independence_number(const Graph& g) {
  require_at_most(g.order(), 64, "independence_number");
  std::size_t best = 0;
  return mis(masks_of(g), full_mask(g.order()), 0, best);
}

std::uint64_t canonical_key(const Graph& g) { return canonical_masks(g.order(), masks_of(g)); }

Graph graph_from_key(std::size_t n, std::uint64_t key) {
  require_at_most(n, kCanonicalLimit, "graph_from_key");
  std::vector<Edge> edges;
  std::size_t k = 0;
  for (Vertex a = 0; a < n; ++a) {
    for (Vertex b = a + 1; b < n; ++b, ++k) {
      if (key & bit(k)) edges.emplace_back(a, b);
    }
  }
  return Graph(n, edges);
}

Graph canonical_graph(const Graph& g) { return graph_from_key(g.order(), canonical_key(g)); }

bool isomorphic(const Graph& a, const Graph& b) {
  return a.order() == b.order() && a.edge_count() == b.edge_count() && canonical_key(a) == canonical_key(b);
}

ExSearchResult brute_ex(const Graph& h) {
  const std::size_t n = h.order();
  require_at_most(n, kBruteExLimit, "brute_ex");
  const auto [missing, keys] = failing_level(h, false);
  ExSearchResult out;
  out.n = n;
  out.min_missing = missing;
  out.ex_value = n * (n - 1) / 2 - missing;
  out.witness_missing = graph_from_key(n, keys.front());
  out.witness = complement(out.witness_missing);
  return out;
}

std::vector<Graph> enumerate_extremal(const Graph& h) {
  const std::size_t n = h.order();
  require_at_most(n, kEnumerateLimit, "enumerate_extremal");
  const auto [missing, keys] = failing_level(h, true);
  (void)missing;
  std::vector<Graph> out;
  for (std::uint64_t key : keys) out.push_back(complement(graph_from_key(n, key)));
  return out;
}

}  // namespace turan
