#include "turan/matching.hpp"

#include <bit>
#include <limits>
#include <string>

#include "turan/error.hpp"

namespace turan {

namespace {

constexpr Vertex kNone = std::numeric_limits<Vertex>::max();
constexpr std::size_t kUnreached = std::numeric_limits<std::size_t>::max();

/// Smallest index >= from present in all three sets, or `limit`.
Vertex next_common(const VertexSet& a, const VertexSet& b, const VertexSet& c, Vertex from, std::size_t limit) {
  const auto& wa = a.words();
  const auto& wb = b.words();
  const auto& wc = c.words();
  if (from >= limit) return static_cast<Vertex>(limit);
  std::size_t w = from >> 6;
  std::uint64_t bits = wa[w] & wb[w] & wc[w] & (~std::uint64_t{0} << (from & 63));
  while (true) {
    if (bits != 0) return static_cast<Vertex>(w * 64 + static_cast<std::size_t>(std::countr_zero(bits)));
    if (++w == wa.size()) return static_cast<Vertex>(limit);
    bits = wa[w] & wb[w] & wc[w];
  }
}

class HopcroftKarp {
 public:
  explicit HopcroftKarp(const BipartiteGraph& p)
      : p_(p),
        left_(p.left_size()),
        right_(p.right_size()),
        match_left_(left_, kNone),
        match_right_(right_, kNone),
        dist_(left_, kUnreached) {}

  std::vector<std::pair<Vertex, Vertex>> run() {
    greedy_seed();
    while (layer()) {
      alive_ = VertexSet::full(right_);
      for (Vertex u = 0; u < left_; ++u) {
        if (match_left_[u] == kNone && dist_[u] == 0) augment_from(u);
      }
    }
    std::vector<std::pair<Vertex, Vertex>> out;
    for (Vertex u = 0; u < left_; ++u) {
      if (match_left_[u] != kNone) out.emplace_back(u, match_left_[u]);
    }
    return out;
  }

 private:
  void greedy_seed() {
    VertexSet free_right = VertexSet::full(right_);
    for (Vertex u = 0; u < left_; ++u) {
      const Vertex r = next_common(p_.row(u), free_right, free_right, 0, right_);
      if (r < right_) {
        match_left_[u] = r;
        match_right_[r] = u;
        free_right.erase(r);
      }
    }
  }

  /// Layered BFS from all free left vertices. Returns whether some free right
  /// vertex is reachable; right vertices are bucketed by the layer of the left
  /// vertex that discovered them.
  bool layer() {
    std::fill(dist_.begin(), dist_.end(), kUnreached);
    layers_.clear();
    std::vector<Vertex> frontier;
    for (Vertex u = 0; u < left_; ++u) {
      if (match_left_[u] == kNone) {
        dist_[u] = 0;
        frontier.push_back(u);
      }
    }
    VertexSet unvisited = VertexSet::full(right_);
    bool found = false;
    for (std::size_t depth = 0; !frontier.empty() && !found; ++depth) {
      layers_.emplace_back(right_);
      std::vector<Vertex> next;
      for (Vertex u : frontier) {
        for (Vertex r = next_common(p_.row(u), unvisited, unvisited, 0, right_); r < right_;
             r = next_common(p_.row(u), unvisited, unvisited, r + 1, right_)) {
          unvisited.erase(r);
          layers_[depth].insert(r);
          const Vertex w = match_right_[r];
          if (w == kNone) {
            found = true;
          } else if (dist_[w] == kUnreached) {
            dist_[w] = depth + 1;
            next.push_back(w);
          }
        }
      }
      frontier = std::move(next);
    }
    return found;
  }

  /// Iterative DFS along the layering; flips the path on success.
  bool augment_from(Vertex root) {
    struct Frame {
      Vertex left;
      Vertex cursor;
      Vertex via;  // right vertex used to enter the next frame
    };
    std::vector<Frame> stack{{root, 0, kNone}};
    while (!stack.empty()) {
      Frame& top = stack.back();
      const std::size_t d = dist_[top.left];
      if (d >= layers_.size()) {
        dist_[top.left] = kUnreached;
        stack.pop_back();
        continue;
      }
      const Vertex r = next_common(p_.row(top.left), layers_[d], alive_, top.cursor, right_);
      if (r >= right_) {
        dist_[top.left] = kUnreached;
        stack.pop_back();
        continue;
      }
      top.cursor = r + 1;
      alive_.erase(r);
      const Vertex w = match_right_[r];
      if (w == kNone) {
        top.via = r;
        for (auto it = stack.rbegin(); it != stack.rend(); ++it) {
          match_left_[it->left] = it->via;
          match_right_[it->via] = it->left;
        }
        return true;
      }
      if (dist_[w] == d + 1) {
        top.via = r;
        stack.push_back({w, 0, kNone});
      }
    }
    return false;
  }

  const BipartiteGraph& p_;
  std::size_t left_;
  std::size_t right_;
  std::vector<Vertex> match_left_;
  std::vector<Vertex> match_right_;
  std::vector<std::size_t> dist_;
  std::vector<VertexSet> layers_;
  VertexSet alive_;
};

}  // namespace

BipartiteGraph::BipartiteGraph(std::size_t left_size, std::size_t right_size)
    : right_size_(right_size), rows_(left_size, VertexSet(right_size)) {}

BipartiteGraph::BipartiteGraph(std::size_t left_size, std::size_t right_size,
                               std::span<const std::pair<Vertex, Vertex>> edges)
    : BipartiteGraph(left_size, right_size) {
  for (const auto& [l, r] : edges) add_edge(l, r);
}

void BipartiteGraph::add_edge(Vertex left, Vertex right) {
  if (left >= rows_.size() || right >= right_size_) {
    throw Error(ErrorKind::VertexOutOfRange,
                "bipartite edge (" + std::to_string(left) + ", " + std::to_string(right) + ")");
  }
  rows_[left].insert(right);
}

void BipartiteGraph::set_row(Vertex left, VertexSet row) {
  if (left >= rows_.size() || row.universe() != right_size_) {
    throw Error(ErrorKind::VertexOutOfRange, "bipartite row " + std::to_string(left));
  }
  rows_[left] = std::move(row);
}

std::size_t BipartiteGraph::edge_count() const {
  std::size_t total = 0;
  for (const auto& r : rows_) total += r.size();
  return total;
}

std::vector<std::pair<Vertex, Vertex>> maximum_bipartite_matching(const BipartiteGraph& p) {
  if (p.left_size() == 0 || p.right_size() == 0) return {};
  return HopcroftKarp(p).run();
}

}  // namespace turan
