#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "turan/graph.hpp"
#include "turan/packing.hpp"
#include "turan/rng.hpp"

namespace turan::experiments {

/// G models, written "name" or "name:param":
///   edgeless
///   random[:m]          m distinct uniform pairs (default n - delta - 1)
///   forest[:m]          m edges of a random recursive tree (default n - delta - 1)
///   perfect-matching
///   star-noise[:hubs]   hubs with ceil(25 sqrt n) leaves each, random pairs up to n - delta - 1 edges
/// Throws Error(UnknownModelSpec).
Graph sample_g(const std::string& spec, std::size_t n, std::size_t delta, Rng& rng);

/// H models: perfect-matching, triangles, near-regular (max degree
/// `max_degree`, pairing with rejection), cliques[:size] (default
/// max_degree + 1). Labels are randomly permuted.
Graph sample_h(const std::string& spec, std::size_t n, std::size_t max_degree, Rng& rng);

struct TrialRecord {
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  std::size_t n = 0;
  PackingConfig config;
  std::string outcome;  // "success" or "violation(<stage>)"
  std::array<double, 5> seconds{};
  bool c_bound_held = false;
  bool d_bound_held = false;
  std::size_t max_c = 0;
  std::size_t min_d = 0;
  std::size_t resamples = 0;
};

/// Mean of |C_i| over the trials in which position i had d(v_i) >= 4 sqrt n.
struct PositionStat {
  std::size_t position = 0;
  std::size_t samples = 0;
  double mean_c = 0.0;
  double std_error = 0.0;
};

struct Lemma2Table {
  std::size_t n = 0;
  std::string model;
  std::vector<TrialRecord> trials;
  double c_frequency = 0.0;
  double d_frequency = 0.0;
  double joint_frequency = 0.0;
  std::array<double, 3> max_c_ratio{};  // min, mean, max of max|C_i| / sqrt n
  std::array<double, 3> min_d_ratio{};  // same for min|D_i| / sqrt n
  std::vector<PositionStat> positions;
};

/// One sampling round per trial. Trial t uses derive_seed(master_seed, t) for
/// the graph and derive_seed(that, 0) for the round, which is the first
/// attempt pack() would make with cfg.seed set to the trial seed. When the
/// round fails, the retry loop is replayed to count resamples.
Lemma2Table lemma2_stats(std::size_t n, const std::string& g_model, std::size_t trials, const PackingConfig& cfg,
                         std::uint64_t master_seed, std::size_t delta = 1);

std::string lemma2_csv(const Lemma2Table& table);
std::string lemma2_summary(const Lemma2Table& table);

struct SweepRow {
  std::size_t n = 0;
  double divisor = 0.0;
  std::size_t trials = 0;
  std::size_t successes = 0;
  bool outside_theorem = false;
  std::vector<std::pair<std::string, std::size_t>> violations;  // sorted by label
};

/// Runs pack() on random (g, h) pairs with Delta(h) = floor(sqrt n / divisor).
/// Instances are shared across divisors of the same n.
std::vector<SweepRow> constant_sweep(const std::vector<std::size_t>& n_list, const std::vector<double>& divisor_list,
                                     std::size_t trials, std::uint64_t master_seed,
                                     const std::string& g_model = "random", const std::string& h_model = "near-regular");

std::string sweep_csv(const std::vector<SweepRow>& rows);

/// RFC 4180 quoting when needed.
std::string csv_field(const std::string& s);

/// Fixed six-decimal rendering used by every table.
std::string fixed(double x);

}  // namespace turan::experiments
