#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "turan/graph.hpp"
#include "turan/rng.hpp"
#include "turan/vertex_set.hpp"

namespace turan {

inline constexpr Vertex kUnmatched = std::numeric_limits<Vertex>::max();

/// Numeric constants of the packing construction. Defaults reproduce the
/// proof; every field can be overridden for sweeps.
struct PackingConfig {
  double maxdeg_divisor = 200.0;         // Delta(H) <= sqrt(n) / maxdeg_divisor
  double high_degree_coeff = 20.0;       // stage 2 handles d(v) >= coeff * sqrt(n)
  std::size_t small_degree_cap = 10;     // reservoir vertices have d(u) <= cap
  double sample_prob_exponent = -0.5;    // P[u in B_i] = n^exponent
  double c_bound_coeff = 4.0;            // |C_i| <= coeff * sqrt(n)
  double d_bound_coeff = 1.0 / 50.0;     // |D_i| >= coeff * sqrt(n)
  double d_range_coeff = 1.0 / 10.0;     // ... for 2 <= i <= ceil(coeff * sqrt(n))
  double s_size_coeff = 1.0 / 18.0;      // |S_i| >= coeff * n
  std::size_t max_resamples = 64;
  std::uint64_t seed = 0;

  /// Throws Error(InvalidConfig). maxdeg_divisor below sqrt(2) is refused:
  /// the disjoint-cliques construction defeats any such bound.
  void validate() const;
};

/// forward[v] is the H-vertex assigned to G-vertex v.
struct PackingMap {
  std::vector<Vertex> forward;
  friend bool operator==(const PackingMap&, const PackingMap&) = default;
};

struct GuaranteeViolation {
  std::string stage;
  std::string reason;
};

/// Thrown by the individual stage operations; pack() turns it into an outcome.
class GuaranteeFailure : public std::runtime_error {
 public:
  GuaranteeFailure(std::string stage, std::string reason)
      : std::runtime_error(stage + ": " + reason), info_{std::move(stage), std::move(reason)} {}
  const GuaranteeViolation& info() const noexcept { return info_; }

 private:
  GuaranteeViolation info_;
};

namespace trace {

struct StageBoundary {
  int stage;
  bool begin;
};
/// Size of a named vertex set: "S1", "B1", "S" (index i), "B", "D".
struct SetSize {
  std::string name;
  std::size_t index;
  std::size_t size;
};
struct ReservoirAttempt {
  std::size_t attempt;
  std::uint64_t seed;
  bool c_bound_held;
  bool d_bound_held;
  std::size_t max_c;
  std::size_t min_d;
};
struct Match {
  int stage;
  Vertex g;
  Vertex h;
};
/// State after stage-2 iteration i (i = 1 is the end of stage 1).
struct Checkpoint {
  std::size_t index;
  std::size_t matched;
  std::size_t matched_neighbors;  // |X u Y|
  bool neighbors_covered;         // all H-neighbors of f(v_i) matched
  bool matched_in_reservoirs;     // matched G-vertices other than v_1..v_i lie in B_1..B_i
  bool count_bounded;             // matched <= (i - 1)(Delta(H) + 1) + delta + 1
};
struct IndependentSplit {
  std::size_t j_size;
  std::size_t k_size;
};
struct TargetPool {
  std::size_t min_non_forbidden;   // min over K of |H \ N_H(f(matched neighbors))|
  std::size_t min_unmatched_eligible;
};
struct HallGraph {
  std::size_t side;
  std::size_t min_left_degree;
  std::size_t min_right_degree;
  std::size_t matching_size;
};

using Body = std::variant<StageBoundary, SetSize, ReservoirAttempt, Match, Checkpoint, IndependentSplit,
                          TargetPool, HallGraph>;

struct Event {
  std::uint64_t seq;
  Body body;
};

}  // namespace trace

/// Ordered audit log of a packing run. Sequence numbers are strictly
/// increasing; no wall-clock data is stored, so equal inputs give equal traces.
class StageTrace {
 public:
  void add(trace::Body body) { events_.push_back({events_.size(), std::move(body)}); }
  const std::vector<trace::Event>& events() const noexcept { return events_; }

  template <typename T>
  std::vector<T> all() const {
    std::vector<T> out;
    for (const auto& e : events_) {
      if (const T* p = std::get_if<T>(&e.body)) out.push_back(*p);
    }
    return out;
  }

  /// Number of failed reservoir attempts before the accepted one.
  std::size_t resamples() const;

 private:
  std::vector<trace::Event> events_;
};

struct PackingOutcome {
  std::variant<PackingMap, GuaranteeViolation> result;
  StageTrace trace;

  bool success() const noexcept { return std::holds_alternative<PackingMap>(result); }
  const PackingMap& map() const { return std::get<PackingMap>(result); }
  const GuaranteeViolation& violation() const { return std::get<GuaranteeViolation>(result); }
};

/// Partial bijection built up by the stages.
class PackingState {
 public:
  explicit PackingState(std::size_t n);

  std::size_t order() const noexcept { return forward_.size(); }
  std::size_t matched() const noexcept { return matched_; }
  bool g_matched(Vertex v) const { return forward_[v] != kUnmatched; }
  bool h_matched(Vertex w) const { return backward_[w] != kUnmatched; }
  Vertex image(Vertex v) const { return forward_[v]; }
  const VertexSet& unmatched_h() const noexcept { return unmatched_h_; }

  /// Whether sending v to w keeps every matched G-edge at v off H.
  bool allowed(const Graph& g, const Graph& h, Vertex v, Vertex w) const;

  /// Records v -> w. Throws std::logic_error if either side is taken.
  void match(Vertex v, Vertex w, int stage);

  StageTrace& trace() noexcept { return trace_; }
  const StageTrace& trace() const noexcept { return trace_; }
  StageTrace release_trace() { return std::move(trace_); }

  const std::vector<Vertex>& forward() const noexcept { return forward_; }

 private:
  std::vector<Vertex> forward_;
  std::vector<Vertex> backward_;
  VertexSet unmatched_h_;
  std::size_t matched_ = 0;
  StageTrace trace_;
};

/// Random reservoirs B_i and the derived D_i, indexed by position i in the
/// degree order (entries below 2 are empty).
struct Reservoirs {
  std::size_t last_index = 1;
  std::vector<VertexSet> b;
  std::vector<VertexSet> d;
  std::size_t attempts = 0;
  std::uint64_t seed = 0;
};

/// One draw of the reservoirs with its Lemma-2 style bookkeeping.
struct ReservoirSample {
  Reservoirs sets;
  bool c_bound_held = false;
  bool d_bound_held = false;
  std::size_t max_c = 0;
  std::size_t min_d = 0;
  /// |C_i| for i = 0..n (positions 0 and 1 are zero).
  std::vector<std::size_t> c_sizes;
};

/// Throws Error naming the first violated hypothesis.
void check_inputs(const Graph& g, const Graph& h, const PackingConfig& cfg);

/// k: number of leading vertices of `order` with degree >= high_degree_coeff * sqrt(n).
std::size_t high_degree_count(const Graph& g, std::span<const Vertex> order, const PackingConfig& cfg);

/// Last position i for which S_i / B_i are materialized:
/// min(n, max(k, ceil(d_range_coeff * sqrt(n)))).
std::size_t reservoir_range(const Graph& g, std::span<const Vertex> order, const PackingConfig& cfg);

/// Independent set outside N[v_1] of vertices with degree < 2 sqrt(n). Uses
/// the greedy set when v_1 has at least 6 * delta non-neighbors and one
/// vertex per component of the non-neighborhood otherwise.
VertexSet build_s1(const Graph& g, std::span<const Vertex> order, std::size_t delta, const PackingConfig& cfg);

/// Greedy independent set avoiding N[v_i] and N[B_1] with member degrees
/// capped at small_degree_cap. Throws GuaranteeFailure("Si") below
/// s_size_coeff * n.
VertexSet build_si(const Graph& g, Vertex v_i, const VertexSet& b1, const PackingConfig& cfg);

/// One sampling round with no retries. `sets[i]` is S_i for
/// i = 2..sets.size()-1.
ReservoirSample sample_reservoirs_once(const Graph& g, std::span<const Vertex> order,
                                       std::span<const VertexSet> sets, const PackingConfig& cfg, Rng& rng);

/// Samples until both bounds hold, re-seeding attempt a with
/// derive_seed(cfg.seed, a). Throws GuaranteeFailure("Lemma2") when some
/// checked S_i is already too small, or after max_resamples failed attempts.
Reservoirs sample_reservoirs(const Graph& g, std::span<const Vertex> order, std::span<const VertexSet> sets,
                             const PackingConfig& cfg, StageTrace* trace = nullptr);

void stage1(PackingState& state, const Graph& g, const Graph& h, std::span<const Vertex> order, const VertexSet& b1);

void stage2(PackingState& state, const Graph& g, const Graph& h, std::span<const Vertex> order,
            const Reservoirs& reservoirs, const VertexSet& b1, const PackingConfig& cfg);

/// Returns J, the independent set of unmatched vertices left for stage 4.
VertexSet stage3(PackingState& state, const Graph& g, const Graph& h, const PackingConfig& cfg);

PackingMap stage4(PackingState& state, const Graph& g, const Graph& h);

/// Wall-clock seconds per stage (0 is set construction and sampling). Kept
/// apart from the trace so traces stay reproducible.
struct StageTimings {
  std::array<double, 5> seconds{};
};

/// Full pipeline. Input errors throw Error; everything after check_inputs
/// is reported in the outcome. A Success outcome has passed verify_packing.
PackingOutcome pack(const Graph& g, const Graph& h, const PackingConfig& cfg, StageTimings* timings = nullptr);

/// True iff no edge of g is mapped onto an edge of h.
/// Throws Error(NotABijection) or Error(SizeMismatch).
bool verify_packing(const Graph& g, const Graph& h, const PackingMap& f);

}  // namespace turan
