#include "turan/packing.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <string>

#include "turan/error.hpp"
#include "turan/matching.hpp"

namespace turan {

namespace {

double root_n(std::size_t n) { return std::sqrt(static_cast<double>(n)); }

/// Largest integer strictly below x (x > 0).
std::size_t floor_strict(double x) {
  const double c = std::ceil(x);
  return c <= 0.0 ? 0 : static_cast<std::size_t>(c) - 1;
}

/// Scratch marker over [0, n) that clears in O(1).
class StampSet {
 public:
  explicit StampSet(std::size_t n) : stamp_(n, 0) {}
  void reset() {
    ++current_;
    items_.clear();
  }
  void insert(Vertex v) {
    if (stamp_[v] != current_) {
      stamp_[v] = current_;
      items_.push_back(v);
    }
  }
  bool contains(Vertex v) const { return stamp_[v] == current_; }
  std::size_t size() const { return items_.size(); }
  const std::vector<Vertex>& items() const { return items_; }

 private:
  std::vector<std::uint32_t> stamp_;
  std::uint32_t current_ = 0;
  std::vector<Vertex> items_;
};

/// Marks the H-neighbors of the images of all matched G-neighbors of v.
/// Returns the number of matched G-neighbors.
std::size_t mark_forbidden(const PackingState& state, const Graph& g, const Graph& h, Vertex v, StampSet& forbidden) {
  forbidden.reset();
  std::size_t matched_neighbors = 0;
  for (Vertex x : g.neighbors(v)) {
    if (!state.g_matched(x)) continue;
    ++matched_neighbors;
    for (Vertex y : h.neighbors(state.image(x))) forbidden.insert(y);
  }
  return matched_neighbors;
}

/// Lowest-index unmatched H-vertex outside `forbidden`, or n.
Vertex lowest_eligible(const PackingState& state, const StampSet& forbidden) {
  const auto& free = state.unmatched_h();
  Vertex w = free.first();
  while (w < free.universe() && forbidden.contains(w)) w = free.next(w + 1);
  return w;
}

}  // namespace

void PackingConfig::validate() const {
  auto fail = [](const std::string& what) { throw Error(ErrorKind::InvalidConfig, what); };
  if (!(maxdeg_divisor >= std::sqrt(2.0))) fail("maxdeg_divisor must be at least sqrt(2)");
  if (!(high_degree_coeff > 0)) fail("high_degree_coeff must be positive");
  if (small_degree_cap == 0) fail("small_degree_cap must be positive");
  if (!std::isfinite(sample_prob_exponent) || sample_prob_exponent > 0) fail("sample_prob_exponent must be <= 0");
  if (!(c_bound_coeff > 0)) fail("c_bound_coeff must be positive");
  if (!(d_bound_coeff > 0)) fail("d_bound_coeff must be positive");
  if (!(d_range_coeff > 0)) fail("d_range_coeff must be positive");
  if (!(s_size_coeff > 0)) fail("s_size_coeff must be positive");
  if (max_resamples == 0) fail("max_resamples must be positive");
}

std::size_t StageTrace::resamples() const {
  std::size_t attempts = 0;
  for (const auto& e : events_) {
    if (std::holds_alternative<trace::ReservoirAttempt>(e.body)) ++attempts;
  }
  return attempts == 0 ? 0 : attempts - 1;
}

PackingState::PackingState(std::size_t n)
    : forward_(n, kUnmatched), backward_(n, kUnmatched), unmatched_h_(VertexSet::full(n)) {}

bool PackingState::allowed(const Graph& g, const Graph& h, Vertex v, Vertex w) const {
  for (Vertex x : g.neighbors(v)) {
    if (g_matched(x) && h.has_edge(image(x), w)) return false;
  }
  return true;
}

void PackingState::match(Vertex v, Vertex w, int stage) {
  if (forward_.at(v) != kUnmatched || backward_.at(w) != kUnmatched) {
    throw std::logic_error("vertex matched twice: " + std::to_string(v) + " -> " + std::to_string(w));
  }
  forward_[v] = w;
  backward_[w] = v;
  unmatched_h_.erase(w);
  ++matched_;
  trace_.add(trace::Match{stage, v, w});
}

void check_inputs(const Graph& g, const Graph& h, const PackingConfig& cfg) {
  cfg.validate();
  const std::size_t n = h.order();
  if (g.order() != n) {
    throw Error(ErrorKind::SizeMismatch,
                "G has " + std::to_string(g.order()) + " vertices, H has " + std::to_string(n));
  }
  if (n == 0) throw Error(ErrorKind::SizeMismatch, "graphs are empty");
  const std::size_t delta = h.min_degree();
  if (delta == 0) throw Error(ErrorKind::IsolatedVertexInH, "H has an isolated vertex");
  const std::size_t max_deg = h.max_degree();
  if (static_cast<double>(max_deg) > root_n(n) / cfg.maxdeg_divisor) {
    throw Error(ErrorKind::MaxDegreeExceeded, "Delta(H) = " + std::to_string(max_deg) + " exceeds sqrt(" +
                                                  std::to_string(n) + ") / " + std::to_string(cfg.maxdeg_divisor));
  }
  if (g.edge_count() + delta + 1 > n) {
    throw Error(ErrorKind::TooManyMissingEdges, "G has " + std::to_string(g.edge_count()) +
                                                    " edges, more than n - delta(H) - 1 = " +
                                                    std::to_string(n - delta - 1));
  }
}

std::size_t high_degree_count(const Graph& g, std::span<const Vertex> order, const PackingConfig& cfg) {
  const double threshold = cfg.high_degree_coeff * root_n(g.order());
  std::size_t k = 0;
  while (k < order.size() && static_cast<double>(g.degree(order[k])) >= threshold) ++k;
  return k;
}

std::size_t reservoir_range(const Graph& g, std::span<const Vertex> order, const PackingConfig& cfg) {
  const auto by_range = static_cast<std::size_t>(std::ceil(cfg.d_range_coeff * root_n(g.order())));
  return std::min(g.order(), std::max(high_degree_count(g, order, cfg), by_range));
}

VertexSet build_s1(const Graph& g, std::span<const Vertex> order, std::size_t delta, const PackingConfig& cfg) {
  (void)cfg;
  const std::size_t n = g.order();
  const Vertex v1 = order.front();
  const std::size_t cap = floor_strict(2.0 * root_n(n));
  VertexSet outside = VertexSet::full(n) - closed_neighborhood(g, VertexSet(n, {v1}));

  VertexSet s1(n);
  if (outside.size() >= 6 * delta) {
    s1 = greedy_independent_set(g, outside, cap);
  } else {
    // One vertex per component of the subgraph induced on the non-neighbors.
    VertexSet unseen = outside;
    std::vector<Vertex> stack;
    for (Vertex root = unseen.first(); root < n; root = unseen.next(root + 1)) {
      Vertex best = kUnmatched;
      unseen.erase(root);
      stack.assign(1, root);
      while (!stack.empty()) {
        const Vertex v = stack.back();
        stack.pop_back();
        if (g.degree(v) <= cap && (best == kUnmatched || g.degree(v) < g.degree(best) ||
                                   (g.degree(v) == g.degree(best) && v < best))) {
          best = v;
        }
        for (Vertex u : g.neighbors(v)) {
          if (unseen.contains(u)) {
            unseen.erase(u);
            stack.push_back(u);
          }
        }
      }
      if (best != kUnmatched) s1.insert(best);
    }
  }
  if (s1.size() < delta) {
    throw GuaranteeFailure("S1", "|S1| = " + std::to_string(s1.size()) + " < delta = " + std::to_string(delta));
  }
  return s1;
}

VertexSet build_si(const Graph& g, Vertex v_i, const VertexSet& b1, const PackingConfig& cfg) {
  const std::size_t n = g.order();
  VertexSet excluded = closed_neighborhood(g, VertexSet(n, {v_i})) | closed_neighborhood(g, b1);
  VertexSet si = greedy_independent_set(g, VertexSet::full(n) - excluded, cfg.small_degree_cap);
  const double needed = cfg.s_size_coeff * static_cast<double>(n);
  if (static_cast<double>(si.size()) < needed) {
    throw GuaranteeFailure("Si", "|S_i| = " + std::to_string(si.size()) + " for v_i = " + std::to_string(v_i) +
                                     " is below " + std::to_string(needed));
  }
  return si;
}

ReservoirSample sample_reservoirs_once(const Graph& g, std::span<const Vertex> order,
                                       std::span<const VertexSet> sets, const PackingConfig& cfg, Rng& rng) {
  const std::size_t n = g.order();
  const double root = root_n(n);
  const double p = std::pow(static_cast<double>(n), cfg.sample_prob_exponent);
  const std::size_t last = sets.empty() ? 1 : sets.size() - 1;

  ReservoirSample out;
  out.sets.last_index = last;
  out.sets.b.assign(last + 1, VertexSet(n));
  out.sets.d.assign(last + 1, VertexSet(n));
  for (std::size_t i = 2; i <= last; ++i) {
    sets[i].for_each([&](Vertex u) {
      if (rng.bernoulli(p)) out.sets.b[i].insert(u);
    });
  }

  // C_i = (B_2 u ... u B_{i-1}) n N(v_i) for every i = 2..n.
  out.c_sizes.assign(n + 1, 0);
  VertexSet earlier(n);
  for (std::size_t i = 2; i <= n; ++i) {
    std::size_t c = 0;
    for (Vertex u : g.neighbors(order[i - 1])) c += earlier.contains(u) ? 1 : 0;
    out.c_sizes[i] = c;
    out.max_c = std::max(out.max_c, c);
    if (i <= last) earlier |= out.sets.b[i];
  }
  out.c_bound_held = static_cast<double>(out.max_c) <= cfg.c_bound_coeff * root;

  // D_i = B_i \ (N[B_2] u ... u N[B_{i-1}]).
  const std::size_t checked = std::min(last, static_cast<std::size_t>(std::ceil(cfg.d_range_coeff * root)));
  VertexSet covered(n);
  out.d_bound_held = true;
  bool first = true;
  for (std::size_t i = 2; i <= last; ++i) {
    out.sets.d[i] = out.sets.b[i] - covered;
    covered |= closed_neighborhood(g, out.sets.b[i]);
    if (i <= checked) {
      const std::size_t size = out.sets.d[i].size();
      out.min_d = first ? size : std::min(out.min_d, size);
      first = false;
      if (static_cast<double>(size) < cfg.d_bound_coeff * root) out.d_bound_held = false;
    }
  }
  return out;
}

Reservoirs sample_reservoirs(const Graph& g, std::span<const Vertex> order, std::span<const VertexSet> sets,
                             const PackingConfig& cfg, StageTrace* trace) {
  const std::size_t n = g.order();
  const double root = root_n(n);
  const std::size_t last = sets.empty() ? 1 : sets.size() - 1;
  const std::size_t checked = std::min(last, static_cast<std::size_t>(std::ceil(cfg.d_range_coeff * root)));
  for (std::size_t i = 2; i <= checked; ++i) {
    if (static_cast<double>(sets[i].size()) < cfg.d_bound_coeff * root) {
      throw GuaranteeFailure("Lemma2", "|S_" + std::to_string(i) + "| = " + std::to_string(sets[i].size()) +
                                           " cannot reach the |D_i| bound");
    }
  }
  for (std::size_t attempt = 0; attempt <= cfg.max_resamples; ++attempt) {
    const std::uint64_t seed = derive_seed(cfg.seed, attempt);
    Rng rng(seed);
    ReservoirSample sample = sample_reservoirs_once(g, order, sets, cfg, rng);
    if (trace != nullptr) {
      trace->add(trace::ReservoirAttempt{attempt, seed, sample.c_bound_held, sample.d_bound_held, sample.max_c,
                                         sample.min_d});
    }
    if (sample.c_bound_held && sample.d_bound_held) {
      sample.sets.attempts = attempt + 1;
      sample.sets.seed = seed;
      if (trace != nullptr) {
        for (std::size_t i = 2; i <= last; ++i) {
          trace->add(trace::SetSize{"B", i, sample.sets.b[i].size()});
          trace->add(trace::SetSize{"D", i, sample.sets.d[i].size()});
        }
      }
      return std::move(sample.sets);
    }
  }
  throw GuaranteeFailure("Lemma2", "reservoir bounds failed in " + std::to_string(cfg.max_resamples + 1) +
                                       " attempts");
}

void stage1(PackingState& state, const Graph& g, const Graph& h, std::span<const Vertex> order, const VertexSet& b1) {
  (void)g;
  state.trace().add(trace::StageBoundary{1, true});
  const std::size_t n = h.order();
  Vertex w = 0;
  for (Vertex u = 1; u < n; ++u) {
    if (h.degree(u) < h.degree(w)) w = u;
  }
  const auto targets = h.neighbors(w);
  const auto sources = b1.members();
  if (sources.size() != targets.size()) {
    throw GuaranteeFailure("Stage1", "|B1| = " + std::to_string(sources.size()) + " differs from delta(H) = " +
                                         std::to_string(targets.size()));
  }
  state.match(order.front(), w, 1);
  for (std::size_t j = 0; j < sources.size(); ++j) state.match(sources[j], targets[j], 1);
  state.trace().add(trace::Checkpoint{1, state.matched(), 0, true, true, true});
  state.trace().add(trace::StageBoundary{1, false});
}

void stage2(PackingState& state, const Graph& g, const Graph& h, std::span<const Vertex> order,
            const Reservoirs& reservoirs, const VertexSet& b1, const PackingConfig& cfg) {
  state.trace().add(trace::StageBoundary{2, true});
  const std::size_t n = g.order();
  const std::size_t k = high_degree_count(g, order, cfg);
  const std::size_t delta = h.min_degree();
  const std::size_t max_deg = h.max_degree();
  if (k > reservoirs.last_index) {
    throw GuaranteeFailure("Stage2", "reservoirs stop at " + std::to_string(reservoirs.last_index) + " < k = " +
                                         std::to_string(k));
  }
  StampSet forbidden(n);
  VertexSet reservoir_union = b1;
  VertexSet leaders(n, {order.front()});

  for (std::size_t i = 2; i <= k; ++i) {
    const Vertex v = order[i - 1];
    if (state.g_matched(v)) {
      throw GuaranteeFailure("Stage2-matched", "v_" + std::to_string(i) + " was matched as a reservoir vertex");
    }
    const std::size_t matched_neighbors = mark_forbidden(state, g, h, v, forbidden);
    const Vertex target = lowest_eligible(state, forbidden);
    if (target >= n) {
      throw GuaranteeFailure("Stage2-target", "no unmatched H-vertex is allowed for v_" + std::to_string(i));
    }
    state.match(v, target, 2);
    leaders.insert(v);
    reservoir_union |= reservoirs.b[i];

    std::vector<Vertex> uncovered;
    for (Vertex r : h.neighbors(target)) {
      if (!state.h_matched(r)) uncovered.push_back(r);
    }
    std::size_t used = 0;
    for (Vertex d = reservoirs.d[i].first(); d < n && used < uncovered.size(); d = reservoirs.d[i].next(d + 1)) {
      if (state.g_matched(d)) continue;
      const Vertex r = uncovered[used];
      if (!state.allowed(g, h, d, r)) {
        throw GuaranteeFailure("Stage2-packing", "D_" + std::to_string(i) + " vertex " + std::to_string(d) +
                                                     " conflicts with H-vertex " + std::to_string(r));
      }
      state.match(d, r, 2);
      ++used;
    }
    if (used < uncovered.size()) {
      throw GuaranteeFailure("Stage2-D", "|D_" + std::to_string(i) + "| too small for " +
                                             std::to_string(uncovered.size()) + " uncovered H-neighbors");
    }

    bool covered = true;
    for (Vertex r : h.neighbors(target)) covered = covered && state.h_matched(r);
    bool in_reservoirs = true;
    for (Vertex u = 0; u < n; ++u) {
      if (state.g_matched(u) && !leaders.contains(u) && !reservoir_union.contains(u)) in_reservoirs = false;
    }
    const bool bounded = state.matched() <= (i - 1) * (max_deg + 1) + delta + 1;
    state.trace().add(trace::Checkpoint{i, state.matched(), matched_neighbors, covered, in_reservoirs, bounded});
    if (!covered || !in_reservoirs || !bounded) {
      throw GuaranteeFailure("Stage2-invariant", "invariant broken after iteration " + std::to_string(i));
    }
  }
  state.trace().add(trace::StageBoundary{2, false});
}

VertexSet stage3(PackingState& state, const Graph& g, const Graph& h, const PackingConfig& cfg) {
  (void)cfg;
  state.trace().add(trace::StageBoundary{3, true});
  const std::size_t n = g.order();
  VertexSet unmatched(n);
  for (Vertex v = 0; v < n; ++v) {
    if (!state.g_matched(v)) unmatched.insert(v);
  }
  const VertexSet j = greedy_independent_set(g, unmatched);
  const VertexSet rest = unmatched - j;
  state.trace().add(trace::IndependentSplit{j.size(), rest.size()});
  if (4 * j.size() < n) {
    throw GuaranteeFailure("Stage3-J", "|J| = " + std::to_string(j.size()) + " < n/4");
  }

  StampSet forbidden(n);
  std::size_t min_pool = n;
  std::size_t min_eligible = n;
  for (Vertex v = rest.first(); v < n; v = rest.next(v + 1)) {
    mark_forbidden(state, g, h, v, forbidden);
    min_pool = std::min(min_pool, n - forbidden.size());
    std::size_t blocked_free = 0;
    for (Vertex w : forbidden.items()) blocked_free += state.h_matched(w) ? 0 : 1;
    min_eligible = std::min(min_eligible, n - state.matched() - blocked_free);
    const Vertex target = lowest_eligible(state, forbidden);
    if (target >= n) {
      throw GuaranteeFailure("Stage3-target", "no unmatched H-vertex is allowed for " + std::to_string(v));
    }
    state.match(v, target, 3);
  }
  if (!rest.empty()) state.trace().add(trace::TargetPool{min_pool, min_eligible});
  state.trace().add(trace::StageBoundary{3, false});
  return j;
}

PackingMap stage4(PackingState& state, const Graph& g, const Graph& h) {
  state.trace().add(trace::StageBoundary{4, true});
  const std::size_t n = g.order();
  std::vector<Vertex> left;
  for (Vertex v = 0; v < n; ++v) {
    if (!state.g_matched(v)) left.push_back(v);
  }
  const std::vector<Vertex> right = state.unmatched_h().members();
  if (left.size() != right.size()) {
    throw std::logic_error("stage 4 sides differ: " + std::to_string(left.size()) + " vs " +
                           std::to_string(right.size()));
  }
  const std::size_t side = left.size();
  std::vector<Vertex> right_index(n, kUnmatched);
  for (std::size_t q = 0; q < side; ++q) right_index[right[q]] = static_cast<Vertex>(q);

  BipartiteGraph allowed(side, side);
  std::vector<std::size_t> right_blocked(side, 0);
  std::size_t min_left = side;
  StampSet forbidden(n);
  for (std::size_t l = 0; l < side; ++l) {
    const Vertex v = left[l];
    forbidden.reset();
    for (Vertex x : g.neighbors(v)) {
      if (!state.g_matched(x)) {
        throw GuaranteeFailure("Stage4-independence", "unmatched vertices " + std::to_string(v) + " and " +
                                                          std::to_string(x) + " are adjacent");
      }
      for (Vertex y : h.neighbors(state.image(x))) {
        if (right_index[y] != kUnmatched) forbidden.insert(y);
      }
    }
    VertexSet row = VertexSet::full(side);
    for (Vertex y : forbidden.items()) {
      row.erase(right_index[y]);
      ++right_blocked[right_index[y]];
    }
    min_left = std::min(min_left, side - forbidden.size());
    allowed.set_row(static_cast<Vertex>(l), std::move(row));
  }
  std::size_t min_right = side;
  for (std::size_t blocked : right_blocked) min_right = std::min(min_right, side - blocked);

  const auto matching = maximum_bipartite_matching(allowed);
  state.trace().add(trace::HallGraph{side, min_left, min_right, matching.size()});
  if (matching.size() != side) {
    throw GuaranteeFailure("Stage4-Hall", "maximum matching has " + std::to_string(matching.size()) + " of " +
                                              std::to_string(side) + " pairs");
  }
  for (const auto& [l, q] : matching) state.match(left[l], right[q], 4);
  state.trace().add(trace::StageBoundary{4, false});
  return PackingMap{state.forward()};
}

PackingOutcome pack(const Graph& g, const Graph& h, const PackingConfig& cfg, StageTimings* timings) {
  check_inputs(g, h, cfg);
  using Clock = std::chrono::steady_clock;
  auto mark = Clock::now();
  auto lap = [&](int stage) {
    if (timings == nullptr) return;
    const auto now = Clock::now();
    timings->seconds[static_cast<std::size_t>(stage)] = std::chrono::duration<double>(now - mark).count();
    mark = now;
  };
  const std::size_t n = g.order();
  const std::size_t delta = h.min_degree();
  PackingState state(n);
  try {
    state.trace().add(trace::StageBoundary{0, true});
    const std::vector<Vertex> order = degree_sequence_order(g);
    const VertexSet s1 = build_s1(g, order, delta, cfg);
    state.trace().add(trace::SetSize{"S1", 1, s1.size()});
    VertexSet b1(n);
    for (Vertex v = s1.first(); v < n && b1.size() < delta; v = s1.next(v + 1)) b1.insert(v);
    state.trace().add(trace::SetSize{"B1", 1, b1.size()});

    const VertexSet closed_b1 = closed_neighborhood(g, b1);
    if (closed_neighborhood(g, VertexSet(n, {order.front()})).intersects(b1)) {
      throw GuaranteeFailure("Invariant", "B1 meets N[v_1]");
    }

    const std::size_t last = reservoir_range(g, order, cfg);
    std::vector<VertexSet> sets(last + 1, VertexSet(n));
    for (std::size_t i = 2; i <= last; ++i) {
      sets[i] = build_si(g, order[i - 1], b1, cfg);
      state.trace().add(trace::SetSize{"S", i, sets[i].size()});
      if (sets[i].intersects(closed_b1 | closed_neighborhood(g, VertexSet(n, {order[i - 1]})))) {
        throw GuaranteeFailure("Invariant", "S_" + std::to_string(i) + " meets N[v_i] u N[B1]");
      }
    }
    const Reservoirs reservoirs = sample_reservoirs(g, order, sets, cfg, &state.trace());
    state.trace().add(trace::StageBoundary{0, false});
    lap(0);

    stage1(state, g, h, order, b1);
    lap(1);
    stage2(state, g, h, order, reservoirs, b1, cfg);
    lap(2);
    stage3(state, g, h, cfg);
    lap(3);
    PackingMap map = stage4(state, g, h);
    lap(4);
    if (!verify_packing(g, h, map)) {
      throw GuaranteeFailure("Verify", "completed map fails the packing check");
    }
    return PackingOutcome{std::move(map), state.release_trace()};
  } catch (const GuaranteeFailure& failure) {
    return PackingOutcome{failure.info(), state.release_trace()};
  }
}

bool verify_packing(const Graph& g, const Graph& h, const PackingMap& f) {
  const std::size_t n = g.order();
  if (h.order() != n || f.forward.size() != n) {
    throw Error(ErrorKind::SizeMismatch, "map of length " + std::to_string(f.forward.size()) + " for graphs on " +
                                             std::to_string(n) + " and " + std::to_string(h.order()) + " vertices");
  }
  std::vector<bool> hit(n, false);
  for (Vertex v = 0; v < n; ++v) {
    const Vertex w = f.forward[v];
    if (w >= n || hit[w]) {
      throw Error(ErrorKind::NotABijection, "image " + std::to_string(w) + " of vertex " + std::to_string(v) +
                                                " is out of range or repeated");
    }
    hit[w] = true;
  }
  for (const auto& [u, v] : g.edges()) {
    if (h.has_edge(f.forward[u], f.forward[v])) return false;
  }
  return true;
}

}  // namespace turan
