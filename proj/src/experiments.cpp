#include "turan/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <unordered_set>

#include "turan/error.hpp"

namespace turan::experiments {

namespace {

struct Spec {
  std::string name;
  std::optional<std::size_t> param;
};

Spec parse_spec(const std::string& spec) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos) return {spec, std::nullopt};
  const std::string value = spec.substr(colon + 1);
  if (value.empty() || !std::all_of(value.begin(), value.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    throw Error(ErrorKind::UnknownModelSpec, "bad model parameter in '" + spec + "'");
  }
  return {spec.substr(0, colon), static_cast<std::size_t>(std::stoull(value))};
}

/// Collects distinct edges in insertion order.
class EdgeBag {
 public:
  explicit EdgeBag(std::size_t n) : n_(n) {}

  bool add(Vertex u, Vertex v) {
    if (u == v) return false;
    if (u > v) std::swap(u, v);
    if (!seen_.insert(static_cast<std::uint64_t>(u) * n_ + v).second) return false;
    edges_.emplace_back(u, v);
    ++degree_[u];
    ++degree_[v];
    return true;
  }
  std::size_t size() const { return edges_.size(); }
  std::size_t degree(Vertex v) const {
    auto it = degree_.find(v);
    return it == degree_.end() ? 0 : it->second;
  }
  Graph build() const { return Graph(n_, edges_); }

 private:
  std::size_t n_;
  std::unordered_set<std::uint64_t> seen_;
  std::map<Vertex, std::size_t> degree_;
  std::vector<Edge> edges_;
};

std::size_t missing_budget(std::size_t n, std::size_t delta) { return n > delta + 1 ? n - delta - 1 : 0; }

void add_random_pairs(EdgeBag& bag, std::size_t target, std::span<const Vertex> pool, Rng& rng) {
  const std::size_t k = pool.size();
  if (k < 2) return;
  target = std::min(target, bag.size() + k * (k - 1) / 2);
  while (bag.size() < target) {
    bag.add(pool[rng.below(k)], pool[rng.below(k)]);
  }
}

std::vector<Vertex> permutation(std::size_t n, Rng& rng) {
  std::vector<Vertex> p(n);
  std::iota(p.begin(), p.end(), Vertex{0});
  rng.shuffle(p.begin(), p.end());
  return p;
}

Graph relabel(const Graph& g, Rng& rng) {
  const auto p = permutation(g.order(), rng);
  std::vector<Edge> edges;
  for (const auto& [u, v] : g.edges()) edges.emplace_back(std::min(p[u], p[v]), std::max(p[u], p[v]));
  return Graph(g.order(), edges);
}

void add_clique(std::vector<Edge>& edges, Vertex base, std::size_t size) {
  for (Vertex a = 0; a < size; ++a) {
    for (Vertex b = a + 1; b < size; ++b) edges.emplace_back(base + a, base + b);
  }
}

void add_cycle(std::vector<Edge>& edges, Vertex base, std::size_t size) {
  for (Vertex a = 0; a < size; ++a) {
    const Vertex b = static_cast<Vertex>((a + 1) % size);
    edges.emplace_back(base + std::min(a, b), base + std::max(a, b));
  }
}

Graph matching_h(std::size_t n) {
  std::vector<Edge> edges;
  const std::size_t paired = n % 2 == 0 ? n : n - 3;
  for (Vertex v = 0; v + 1 < paired; v += 2) edges.emplace_back(v, v + 1);
  if (n % 2 == 1 && n >= 3) {
    const auto b = static_cast<Vertex>(n - 3);
    edges.emplace_back(b, b + 1);
    edges.emplace_back(b + 1, b + 2);
  }
  return Graph(n, edges);
}

Graph triangles_h(std::size_t n) {
  if (n < 3) throw Error(ErrorKind::ParameterOutOfRange, "triangles model needs n >= 3");
  std::vector<Edge> edges;
  const std::size_t tail = n % 3 == 0 ? 0 : 3 + n % 3;  // a C4 or C5 takes the remainder
  for (Vertex base = 0; base + tail < n; base += 3) add_cycle(edges, base, 3);
  if (tail != 0) add_cycle(edges, static_cast<Vertex>(n - tail), tail);
  return Graph(n, edges);
}

Graph cliques_h(std::size_t n, std::size_t size) {
  if (size < 2) throw Error(ErrorKind::ParameterOutOfRange, "cliques model needs size >= 2");
  std::vector<std::size_t> sizes(n / size, size);
  std::size_t rest = n % size;
  if (rest == 1) {
    if (sizes.empty()) throw Error(ErrorKind::ParameterOutOfRange, "cliques model needs n >= 2");
    if (size == 2) {
      sizes.back() = 3;  // a path closing the odd vertex, handled below
    } else {
      --sizes.back();
      sizes.push_back(2);
    }
    rest = 0;
  }
  if (rest != 0) sizes.push_back(rest);
  std::vector<Edge> edges;
  Vertex base = 0;
  for (std::size_t s : sizes) {
    if (size == 2 && s == 3) {
      edges.emplace_back(base, base + 1);
      edges.emplace_back(base + 1, base + 2);
    } else {
      add_clique(edges, base, s);
    }
    base += static_cast<Vertex>(s);
  }
  return Graph(n, edges);
}

Graph near_regular_h(std::size_t n, std::size_t max_degree, Rng& rng) {
  if (max_degree <= 1) return matching_h(n);
  std::vector<Vertex> stubs;
  stubs.reserve(n * max_degree);
  for (Vertex v = 0; v < n; ++v) stubs.insert(stubs.end(), max_degree, v);
  rng.shuffle(stubs.begin(), stubs.end());
  EdgeBag bag(n);
  for (std::size_t i = 0; i + 1 < stubs.size(); i += 2) bag.add(stubs[i], stubs[i + 1]);

  std::vector<Vertex> isolated;
  for (Vertex v = 0; v < n; ++v) {
    if (bag.degree(v) == 0) isolated.push_back(v);
  }
  for (std::size_t i = 0; i + 1 < isolated.size(); i += 2) bag.add(isolated[i], isolated[i + 1]);
  if (isolated.size() % 2 == 1) {
    const Vertex lone = isolated.back();
    Vertex partner = lone == 0 ? 1 : 0;
    for (Vertex v = 0; v < n; ++v) {
      if (v != lone && bag.degree(v) < max_degree) {
        partner = v;
        break;
      }
    }
    bag.add(lone, partner);
  }
  return bag.build();
}

std::string join_violations(const std::vector<std::pair<std::string, std::size_t>>& v) {
  std::string out;
  for (const auto& [label, count] : v) {
    if (!out.empty()) out += ';';
    out += label + ':' + std::to_string(count);
  }
  return out;
}

std::string format_divisor(double d) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", d);
  return buf;
}

}  // namespace

std::string fixed(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", x);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

Graph sample_g(const std::string& spec, std::size_t n, std::size_t delta, Rng& rng) {
  const Spec s = parse_spec(spec);
  const std::size_t budget = missing_budget(n, delta);
  if (s.name == "edgeless" && !s.param) return Graph(n, std::span<const Edge>{});
  if (s.name == "random") {
    EdgeBag bag(n);
    std::vector<Vertex> all(n);
    std::iota(all.begin(), all.end(), Vertex{0});
    add_random_pairs(bag, s.param.value_or(budget), all, rng);
    return bag.build();
  }
  if (s.name == "forest") {
    std::vector<Edge> tree;
    for (Vertex v = 1; v < n; ++v) tree.emplace_back(static_cast<Vertex>(rng.below(v)), v);
    rng.shuffle(tree.begin(), tree.end());
    tree.resize(std::min(tree.size(), s.param.value_or(budget)));
    return relabel(Graph(n, tree), rng);
  }
  if (s.name == "perfect-matching" && !s.param) {
    const auto p = permutation(n, rng);
    std::vector<Edge> edges;
    for (std::size_t i = 0; i + 1 < n; i += 2) edges.emplace_back(std::min(p[i], p[i + 1]), std::max(p[i], p[i + 1]));
    return Graph(n, edges);
  }
  if (s.name == "star-noise") {
    const std::size_t want_hubs = s.param.value_or(4);
    if (want_hubs == 0) throw Error(ErrorKind::UnknownModelSpec, "star-noise needs at least one hub");
    const auto root_leaves = static_cast<std::size_t>(std::ceil(25.0 * std::sqrt(static_cast<double>(n))));
    const std::size_t hubs = std::min(want_hubs, n / 2);
    const std::size_t leaves = std::min({root_leaves, (n - hubs) / std::max<std::size_t>(hubs, 1), budget / hubs});
    const auto p = permutation(n, rng);
    EdgeBag bag(n);
    std::size_t next = hubs;
    for (std::size_t h = 0; h < hubs; ++h) {
      for (std::size_t l = 0; l < leaves; ++l) bag.add(p[h], p[next++]);
    }
    std::vector<Vertex> rest(p.begin() + static_cast<std::ptrdiff_t>(hubs), p.end());
    add_random_pairs(bag, budget, rest, rng);
    return bag.build();
  }
  throw Error(ErrorKind::UnknownModelSpec, "unknown G model '" + spec + "'");
}

Graph sample_h(const std::string& spec, std::size_t n, std::size_t max_degree, Rng& rng) {
  const Spec s = parse_spec(spec);
  Graph h;
  if (s.name == "perfect-matching" && !s.param) {
    h = matching_h(n);
  } else if (s.name == "triangles" && !s.param) {
    h = triangles_h(n);
  } else if (s.name == "near-regular" && !s.param) {
    h = near_regular_h(n, max_degree, rng);
  } else if (s.name == "cliques") {
    h = cliques_h(n, s.param.value_or(max_degree + 1));
  } else {
    throw Error(ErrorKind::UnknownModelSpec, "unknown H model '" + spec + "'");
  }
  return relabel(h, rng);
}

Lemma2Table lemma2_stats(std::size_t n, const std::string& g_model, std::size_t trials, const PackingConfig& cfg,
                         std::uint64_t master_seed, std::size_t delta) {
  if (trials == 0) throw Error(ErrorKind::ParameterOutOfRange, "lemma2 needs at least one trial");
  cfg.validate();
  Lemma2Table table;
  table.n = n;
  table.model = g_model;
  const double root = std::sqrt(static_cast<double>(n));
  std::map<std::size_t, std::vector<double>> by_position;

  for (std::size_t t = 0; t < trials; ++t) {
    TrialRecord rec;
    rec.trial = t;
    rec.seed = derive_seed(master_seed, t);
    rec.n = n;
    rec.config = cfg;
    rec.config.seed = rec.seed;
    Rng graph_rng(rec.seed);
    const Graph g = sample_g(g_model, n, delta, graph_rng);
    try {
      const auto start = std::chrono::steady_clock::now();
      const std::vector<Vertex> order = degree_sequence_order(g);
      const VertexSet s1 = build_s1(g, order, delta, rec.config);
      VertexSet b1(n);
      for (Vertex v = s1.first(); v < n && b1.size() < delta; v = s1.next(v + 1)) b1.insert(v);
      const std::size_t last = reservoir_range(g, order, rec.config);
      std::vector<VertexSet> sets(last + 1, VertexSet(n));
      for (std::size_t i = 2; i <= last; ++i) sets[i] = build_si(g, order[i - 1], b1, rec.config);

      Rng round(derive_seed(rec.seed, 0));
      const ReservoirSample sample = sample_reservoirs_once(g, order, sets, rec.config, round);
      rec.c_bound_held = sample.c_bound_held;
      rec.d_bound_held = sample.d_bound_held;
      rec.max_c = sample.max_c;
      rec.min_d = sample.min_d;
      for (std::size_t i = 2; i <= n; ++i) {
        if (static_cast<double>(g.degree(order[i - 1])) < 4.0 * root) break;
        by_position[i].push_back(static_cast<double>(sample.c_sizes[i]));
      }
      rec.outcome = "success";
      if (!(sample.c_bound_held && sample.d_bound_held)) {
        StageTrace trace;
        try {
          sample_reservoirs(g, order, sets, rec.config, &trace);
        } catch (const GuaranteeFailure& f) {
          rec.outcome = "violation(" + f.info().stage + ")";
        }
        rec.resamples = trace.resamples();
      }
      rec.seconds[0] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    } catch (const GuaranteeFailure& f) {
      rec.outcome = "violation(" + f.info().stage + ")";
    }
    table.trials.push_back(std::move(rec));
  }

  std::size_t c_ok = 0, d_ok = 0, both = 0;
  table.max_c_ratio = {INFINITY, 0.0, 0.0};
  table.min_d_ratio = {INFINITY, 0.0, 0.0};
  for (const auto& r : table.trials) {
    c_ok += r.c_bound_held ? 1 : 0;
    d_ok += r.d_bound_held ? 1 : 0;
    both += r.c_bound_held && r.d_bound_held ? 1 : 0;
    const double c = static_cast<double>(r.max_c) / root;
    const double d = static_cast<double>(r.min_d) / root;
    table.max_c_ratio = {std::min(table.max_c_ratio[0], c), table.max_c_ratio[1] + c, std::max(table.max_c_ratio[2], c)};
    table.min_d_ratio = {std::min(table.min_d_ratio[0], d), table.min_d_ratio[1] + d, std::max(table.min_d_ratio[2], d)};
  }
  const auto count = static_cast<double>(trials);
  table.c_frequency = static_cast<double>(c_ok) / count;
  table.d_frequency = static_cast<double>(d_ok) / count;
  table.joint_frequency = static_cast<double>(both) / count;
  table.max_c_ratio[1] /= count;
  table.min_d_ratio[1] /= count;

  for (const auto& [position, values] : by_position) {
    PositionStat st;
    st.position = position;
    st.samples = values.size();
    const double k = static_cast<double>(values.size());
    st.mean_c = std::accumulate(values.begin(), values.end(), 0.0) / k;
    if (values.size() > 1) {
      double ss = 0.0;
      for (double v : values) ss += (v - st.mean_c) * (v - st.mean_c);
      st.std_error = std::sqrt(ss / (k - 1.0)) / std::sqrt(k);
    }
    table.positions.push_back(st);
  }
  return table;
}

std::string lemma2_csv(const Lemma2Table& table) {
  const double root = std::sqrt(static_cast<double>(table.n));
  std::ostringstream out;
  out << "trial,seed,n,model,outcome,c_bound_held,d_bound_held,max_c,min_d,max_c_over_sqrt_n,min_d_over_sqrt_n,"
         "resamples\n";
  for (const auto& r : table.trials) {
    out << r.trial << ',' << r.seed << ',' << r.n << ',' << csv_field(table.model) << ',' << csv_field(r.outcome)
        << ',' << (r.c_bound_held ? 1 : 0) << ',' << (r.d_bound_held ? 1 : 0) << ',' << r.max_c << ',' << r.min_d
        << ',' << fixed(static_cast<double>(r.max_c) / root) << ',' << fixed(static_cast<double>(r.min_d) / root)
        << ',' << r.resamples << '\n';
  }
  return out.str();
}

std::string lemma2_summary(const Lemma2Table& table) {
  std::ostringstream out;
  out << "n=" << table.n << " model=" << table.model << " trials=" << table.trials.size() << '\n';
  out << "freq(|C_i| bound)=" << fixed(table.c_frequency) << " freq(|D_i| bound)=" << fixed(table.d_frequency)
      << " freq(both)=" << fixed(table.joint_frequency) << '\n';
  out << "max|C_i|/sqrt(n) min/mean/max=" << fixed(table.max_c_ratio[0]) << '/' << fixed(table.max_c_ratio[1]) << '/'
      << fixed(table.max_c_ratio[2]) << '\n';
  out << "min|D_i|/sqrt(n) min/mean/max=" << fixed(table.min_d_ratio[0]) << '/' << fixed(table.min_d_ratio[1]) << '/'
      << fixed(table.min_d_ratio[2]) << '\n';
  for (const auto& p : table.positions) {
    out << "position " << p.position << ": samples=" << p.samples << " mean|C_i|=" << fixed(p.mean_c)
        << " se=" << fixed(p.std_error) << '\n';
  }
  return out.str();
}

std::vector<SweepRow> constant_sweep(const std::vector<std::size_t>& n_list, const std::vector<double>& divisor_list,
                                     std::size_t trials, std::uint64_t master_seed, const std::string& g_model,
                                     const std::string& h_model) {
  if (n_list.empty() || divisor_list.empty()) {
    throw Error(ErrorKind::ParameterOutOfRange, "sweep needs at least one n and one divisor");
  }
  std::vector<SweepRow> rows;
  for (std::size_t n : n_list) {
    const double root = std::sqrt(static_cast<double>(n));
    for (double divisor : divisor_list) {
      SweepRow row;
      row.n = n;
      row.divisor = divisor;
      row.trials = trials;
      if (!(divisor >= std::sqrt(2.0))) {
        row.outside_theorem = true;
        rows.push_back(std::move(row));
        continue;
      }
      const auto max_degree = std::max<std::size_t>(1, static_cast<std::size_t>(std::floor(root / divisor)));
      std::map<std::string, std::size_t> tally;
      for (std::size_t t = 0; t < trials; ++t) {
        const std::uint64_t seed = derive_seed(derive_seed(master_seed, n), t);
        Rng rng(seed);
        const Graph h = sample_h(h_model, n, max_degree, rng);
        const Graph g = sample_g(g_model, n, std::max<std::size_t>(h.min_degree(), 1), rng);
        PackingConfig cfg;
        cfg.maxdeg_divisor = divisor;
        cfg.seed = derive_seed(seed, 1);
        try {
          const PackingOutcome out = pack(g, h, cfg);
          if (out.success()) {
            ++row.successes;
          } else {
            ++tally[out.violation().stage];
          }
        } catch (const Error&) {
          ++tally["input-rejected"];
        }
      }
      row.violations.assign(tally.begin(), tally.end());
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::string out = "n,divisor,trials,successes,violations_by_stage\n";
  for (const auto& r : rows) {
    out += std::to_string(r.n) + ',' + format_divisor(r.divisor) + ',' + std::to_string(r.trials) + ',' +
           std::to_string(r.successes) + ',' +
           csv_field(r.outside_theorem ? std::string("outside-theorem") : join_violations(r.violations)) + '\n';
  }
  return out;
}

}  // namespace turan::experiments
