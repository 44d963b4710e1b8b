// Acceptance run: one line per criterion, non-zero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <unordered_set>
#include <vector>

#include "turan/cli.hpp"
#include "turan/constructions.hpp"
#include "turan/error.hpp"
#include "turan/experiments.hpp"
#include "turan/hypergraph.hpp"
#include "turan/io.hpp"
#include "turan/oracle.hpp"
#include "turan/packing.hpp"

using namespace turan;
namespace fs = std::filesystem;

namespace {

struct Verdict {
  bool pass;
  std::string detail;
};

int failures = 0;
std::vector<int> selected;

void report(int id, const std::string& name, const std::function<Verdict()>& body) {
  if (!selected.empty() && std::find(selected.begin(), selected.end(), id) == selected.end()) return;
  const auto start = std::chrono::steady_clock::now();
  Verdict v{false, ""};
  try {
    v = body();
  } catch (const std::exception& e) {
    v = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (!v.pass) ++failures;
  char timing[32];
  std::snprintf(timing, sizeof timing, "%.1fs", secs);
  std::cout << "criterion " << id << " [" << name << "]: " << (v.pass ? "PASS" : "FAIL") << " (" << v.detail << "; "
            << timing << ")" << std::endl;
}

Graph cycle(std::size_t n) {
  std::vector<Edge> edges;
  for (Vertex v = 0; v + 1 < n; ++v) edges.emplace_back(v, v + 1);
  edges.emplace_back(0, static_cast<Vertex>(n - 1));
  return Graph(n, edges);
}

Graph disjoint_cliques(std::size_t n, std::size_t size) {
  std::vector<Edge> edges;
  for (Vertex base = 0; base < n; base += static_cast<Vertex>(size)) {
    for (Vertex a = 0; a < size; ++a) {
      for (Vertex b = a + 1; b < size; ++b) edges.emplace_back(base + a, base + b);
    }
  }
  return Graph(n, edges);
}

// Packing check written against raw edge lists only.
bool independent_packing_check(const Graph& g, const Graph& h, const std::vector<Vertex>& f) {
  const std::size_t n = g.order();
  if (f.size() != n) return false;
  std::vector<bool> hit(n, false);
  for (Vertex w : f) {
    if (w >= n || hit[w]) return false;
    hit[w] = true;
  }
  std::unordered_set<std::uint64_t> h_edges;
  for (const auto& [a, b] : h.edges()) h_edges.insert(static_cast<std::uint64_t>(a) * n + b);
  for (const auto& [u, v] : g.edges()) {
    const Vertex a = std::min(f[u], f[v]), b = std::max(f[u], f[v]);
    if (h_edges.count(static_cast<std::uint64_t>(a) * n + b)) return false;
  }
  return true;
}

Verdict packing_soundness() {
  const std::vector<std::pair<std::size_t, std::size_t>> plan = {{400, 500}, {10000, 350}, {40000, 150}};
  const char* g_models[] = {"random", "forest", "perfect-matching", "star-noise", "edgeless"};
  const char* h_models[] = {"near-regular", "cliques", "perfect-matching", "triangles"};
  std::size_t triples = 0, successes = 0, violations = 0, unsound = 0, rejected = 0, at_default = 0;
  std::uint64_t index = 0;
  for (const auto& [n, count] : plan) {
    const double root = std::sqrt(static_cast<double>(n));
    const auto max_delta = std::min<std::size_t>(12, static_cast<std::size_t>(std::floor(root / std::sqrt(2.0))));
    for (std::size_t t = 0; t < count; ++t, ++index) {
      const std::uint64_t seed = derive_seed(0xacce97, index);
      Rng rng(seed);
      PackingConfig cfg;
      cfg.seed = rng.next();
      Graph h;
      // Every fifth triple at n = 40000 uses the default constants.
      if (n == 40000 && t % 5 == 0) {
        h = experiments::sample_h("perfect-matching", n, 1, rng);
        ++at_default;
      } else {
        const std::string model = h_models[rng.below(4)];
        const std::size_t target = 1 + rng.below(max_delta);
        h = experiments::sample_h(model == "triangles" && target < 2 ? "perfect-matching" : model, n, target, rng);
        cfg.maxdeg_divisor = std::max(std::sqrt(2.0), root / static_cast<double>(h.max_degree()) * (1.0 - 1e-12));
      }
      const std::size_t budget = n - h.min_degree() - 1;
      std::string g_model = g_models[rng.below(5)];
      if (g_model == "random" || g_model == "forest") g_model += ":" + std::to_string(rng.below(budget + 1));
      const Graph g = experiments::sample_g(g_model, n, h.min_degree(), rng);
      ++triples;
      try {
        const PackingOutcome out = pack(g, h, cfg);
        if (out.success()) {
          ++successes;
          if (!verify_packing(g, h, out.map()) || !independent_packing_check(g, h, out.map().forward)) ++unsound;
        } else {
          ++violations;
        }
      } catch (const Error&) {
        ++rejected;
      }
    }
  }
  std::ostringstream d;
  d << triples << " triples, " << successes << " successes all re-verified, " << unsound << " unsound, "
    << violations << " guarantee violations, " << rejected << " rejected inputs, " << at_default
    << " at default constants";
  return {triples == 1000 && unsound == 0 && rejected == 0, d.str()};
}

Verdict engine_completeness() {
  const std::size_t n = 40000, trials = 100;
  bool ok = true;
  std::ostringstream d;
  for (const char* h_model : {"perfect-matching", "triangles"}) {
    for (const char* g_model : {"perfect-matching", "forest", "random"}) {
      PackingConfig base;
      // Triangles have Delta = 2, which needs sqrt(n) / divisor >= 2.
      if (std::string(h_model) == "triangles") base.maxdeg_divisor = 100.0;
      std::size_t wins = 0;
      for (std::size_t t = 0; t < trials; ++t) {
        const std::uint64_t seed = derive_seed(derive_seed(0xc0de2, std::hash<std::string>{}(std::string(h_model) + g_model) & 0xffff), t);
        Rng rng(seed);
        const Graph h = experiments::sample_h(h_model, n, 2, rng);
        const Graph g = experiments::sample_g(g_model, n, h.min_degree(), rng);
        PackingConfig cfg = base;
        cfg.seed = rng.next();
        const PackingOutcome out = pack(g, h, cfg);
        wins += out.success() ? 1 : 0;
      }
      const double rate = static_cast<double>(wins) / static_cast<double>(trials);
      ok = ok && rate >= 0.99;
      d << h_model << "/" << g_model << " " << wins << "/" << trials << "; ";
    }
  }
  std::string s = d.str();
  s.resize(s.size() - 2);
  return {ok, s};
}

Verdict ore_agreement() {
  bool ok = true;
  std::ostringstream d;
  for (std::size_t n = 4; n <= 7; ++n) {
    const std::size_t ex = brute_ex(cycle(n)).ex_value;
    const std::size_t want = binomial(n - 1, 2) + 1;
    ok = ok && ex == want;
    d << "ex(" << n << ",C" << n << ")=" << ex << " vs " << want << "; ";
  }
  std::string s = d.str();
  s.resize(s.size() - 2);
  return {ok, s};
}

Verdict small_n_formula() {
  struct Fixture {
    std::string name;
    Graph h;
    bool known_exception;
  };
  const std::vector<Fixture> fixtures = {
      {"PM6", disjoint_cliques(6, 2), false},  {"PM8", disjoint_cliques(8, 2), false},
      {"C6", cycle(6), false},                 {"C7", cycle(7), false},
      {"C8", cycle(8), false},                 {"C9", cycle(9), false},
      {"2K3", disjoint_cliques(6, 3), true},   {"3K3", disjoint_cliques(9, 3), true},
  };
  bool ok = true;
  std::ostringstream d;
  for (const auto& f : fixtures) {
    const std::size_t n = f.h.order();
    const std::size_t delta = f.h.min_degree();
    const std::size_t formula = binomial(n - 1, 2) + delta - 1;
    const ExSearchResult r = brute_ex(f.h);
    const bool lower_holds = !exact_pack(lower_bound_missing(n, delta), f.h).has_value();
    const bool witness_ok = r.witness.edge_count() == r.ex_value && !exact_pack(r.witness_missing, f.h).has_value();
    ok = ok && lower_holds && witness_ok && r.ex_value >= formula;
    d << f.name << " " << r.ex_value << "/" << formula;
    if (r.ex_value != formula) {
      // Only the documented exceptions may differ; the witness must be a
      // missing clique on alpha(h) + 1 vertices, which no copy of h avoids.
      const std::size_t clique = independence_number(f.h) + 1;
      std::size_t touched = 0;
      for (Vertex v = 0; v < n; ++v) touched += r.witness_missing.degree(v) > 0 ? 1 : 0;
      const bool clique_witness = touched == clique && r.witness_missing.edge_count() == binomial(clique, 2);
      ok = ok && f.known_exception && clique_witness;
      d << " exception, missing K" << clique;
    }
    d << "; ";
  }
  std::string s = d.str();
  s.resize(s.size() - 2);
  return {ok, s + "; lower-bound graphs contain no copy in every case"};
}

Verdict uniqueness() {
  bool ok = true;
  std::ostringstream d;
  for (std::size_t n : {6u, 7u}) {
    const auto classes = enumerate_extremal(cycle(n));
    const bool unique = classes.size() == 1 && isomorphic(classes[0], ore_extremal(n));
    ok = ok && unique;
    d << "C" << n << ": " << classes.size() << " class" << (unique ? " = K_n - S_{1,n-2}" : "") << "; ";
  }
  std::string s = d.str();
  s.resize(s.size() - 2);
  return {ok, s};
}

Verdict second_extremal_graph() {
  const Graph h = degree_two_triangle_graph(8);
  const Graph t = second_extremal(8);
  bool hypothesis = h.degree(0) == 2 && h.has_edge(h.neighbors(0)[0], h.neighbors(0)[1]);
  for (Vertex v = 1; v < 8; ++v) hypothesis = hypothesis && h.degree(v) >= 3;
  const bool blocked = !exact_pack(complement(t), h).has_value();
  const bool same_count = t.edge_count() == ore_extremal(8).edge_count();
  const bool distinct = !isomorphic(t, ore_extremal(8));
  std::ostringstream d;
  d << "fixture hypothesis " << (hypothesis ? "holds" : "fails") << ", exact search finds "
    << (blocked ? "no copy" : "a copy") << ", edges " << t.edge_count() << " vs " << ore_extremal(8).edge_count()
    << ", non-isomorphic to the star complement " << (distinct ? "yes" : "no");
  return {hypothesis && blocked && same_count && distinct, d.str()};
}

Verdict proposition_chain() {
  const Hypergraph3 h = counterexample_h(3);
  const Hypergraph3 t = construction_t(16);
  const bool zero = links_extremal_zero(h);
  const std::size_t edges = t.edge_count();
  const double lower = static_cast<double>(binomial(14, 3)) + 4.0 / 3.0 * static_cast<double>(binomial(14, 2));
  const bool above_lower = 3 * edges >= 3 * binomial(14, 3) + 4 * binomial(14, 2);
  const bool above_links = edges > binomial(15, 3);
  const ObstructionReport obs = local_obstruction_check(t, h);
  const bool blocked = obs.verdict == ObstructionVerdict::NoSpanningCopy;
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "links_extremal_zero=%s, edges(T)=%zu >= %.2f, %zu > %zu, obstruction a=%zu b=%zu %s", zero ? "true" : "false",
                edges, lower, edges, binomial(15, 3), obs.colorable_in_host, obs.non_colorable_in_pattern,
                blocked ? "NoSpanningCopy" : "Inconclusive");
  return {zero && edges == 494 && above_lower && above_links && blocked, buf};
}

Verdict tightness() {
  const TightnessPair big = tightness_pair(4, 4);
  const std::size_t bound = binomial(20, 2) + 4 - 1;
  const std::size_t alpha4 = independence_number(big.h);
  bool small_ok = true;
  for (std::size_t delta = 1; delta <= 3; ++delta) {
    const TightnessPair small = tightness_pair(2, delta);
    small_ok = small_ok && independence_number(small.h) <= 3 &&
               small.report.find("h_not_in_g_full")->status == ClaimStatus::Verified;
  }
  std::ostringstream d;
  d << "edges(g_full)=" << big.g_full.edge_count() << " > " << bound << ", alpha(h)=" << alpha4
    << " <= 5 (exact branch and bound), k=2 exhaustive " << (small_ok ? "ok" : "failed");
  return {big.g_full.edge_count() == 195 && bound == 193 && alpha4 <= 5 && small_ok && big.report.all_hold(),
          d.str()};
}

Verdict lemma2_statistics() {
  const std::size_t n = 40000;
  const double root = std::sqrt(static_cast<double>(n));
  const auto pm = experiments::lemma2_stats(n, "perfect-matching", 100, PackingConfig{}, 0x1e2);
  std::size_t few_resamples = 0;
  for (const auto& r : pm.trials) few_resamples += r.resamples <= 2 ? 1 : 0;
  const auto sn = experiments::lemma2_stats(n, "star-noise", 100, PackingConfig{}, 0x1e3);
  bool expectation_ok = !sn.positions.empty();
  double worst = 0.0;
  for (const auto& p : sn.positions) {
    expectation_ok = expectation_ok && p.mean_c - 3.0 * p.std_error <= 2.0 * root;
    worst = std::max(worst, p.mean_c);
  }
  std::ostringstream d;
  d << "perfect-matching freq(C)=" << experiments::fixed(pm.c_frequency) << " freq(D)="
    << experiments::fixed(pm.d_frequency) << ", resamples<=2 in " << few_resamples << "/100; star-noise freq(C)="
    << experiments::fixed(sn.c_frequency) << " freq(D)=" << experiments::fixed(sn.d_frequency) << ", "
    << sn.positions.size() << " positions with d(v_i) >= 4 sqrt n, max mean|C_i|=" << experiments::fixed(worst)
    << " vs 2 sqrt n=" << experiments::fixed(2.0 * root);
  const bool ok = pm.c_frequency > 0.5 && pm.d_frequency > 0.5 && sn.c_frequency > 0.5 && sn.d_frequency > 0.5 &&
                  few_resamples >= 99 && expectation_ok;
  return {ok, d.str()};
}

Verdict determinism() {
  const fs::path dir = fs::temp_directory_path() / "turan_acceptance";
  fs::create_directories(dir);
  Rng rng(10);
  const Graph h = experiments::sample_h("near-regular", 10000, 3, rng);
  const Graph g = experiments::sample_g("random", 10000, h.min_degree(), rng);
  const std::string gp = (dir / "g.txt").string(), hp = (dir / "h.txt").string();
  io::write_text(gp, io::format_edge_list(g));
  io::write_text(hp, io::format_edge_list(h));
  io::write_text((dir / "c6.txt").string(), io::format_edge_list(cycle(6)));

  auto run_capture = [&](std::vector<std::string> args, const std::vector<std::string>& files) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    std::string all = std::to_string(code) + "\n" + out.str();
    for (const auto& f : files) all += io::read_text(f);
    return all;
  };
  const std::string trace = (dir / "trace.json").string();
  const std::string csv = (dir / "lemma.csv").string();
  const std::string prefix = (dir / "hh").string();
  const std::vector<std::pair<std::vector<std::string>, std::vector<std::string>>> commands = {
      {{"pack", gp, hp, "--maxdeg_divisor", "33", "--seed", "99", "--trace-out", trace}, {trace}},
      {{"construct", "hyper-h", "--s", "2", "--out", prefix}, {prefix + "_h.txt", prefix + "_t.txt", prefix + "_report.json"}},
      {{"construct", "tightness", "--k", "4", "--delta", "4"}, {}},
      {{"hyper-check", prefix + "_t.txt", prefix + "_h.txt"}, {}},
      {{"brute-ex", (dir / "c6.txt").string()}, {}},
      {{"enumerate", (dir / "c6.txt").string()}, {}},
      {{"experiments", "sweep", "--n", "400", "10000", "--divisor", "1", "2", "20", "--trials", "5", "--seed", "7"}, {}},
      {{"experiments", "lemma2", "--n", "10000", "--model", "forest", "--trials", "10", "--seed", "8", "--out", csv},
       {csv}},
  };
  std::size_t identical = 0;
  std::string first_diff;
  for (const auto& [args, files] : commands) {
    const std::string a = run_capture(args, files);
    const std::string b = run_capture(args, files);
    if (a == b) {
      ++identical;
    } else if (first_diff.empty()) {
      first_diff = args[0];
    }
  }
  // The pack mapping must also verify through the CLI.
  std::ostringstream out, err;
  cli::run({"pack", gp, hp, "--maxdeg_divisor", "33", "--seed", "99"}, out, err);
  io::write_text((dir / "map.json").string(), out.str());
  std::ostringstream vout, verr;
  const int verify_code = cli::run({"verify", gp, hp, (dir / "map.json").string()}, vout, verr);
  std::ostringstream d;
  d << identical << "/" << commands.size() << " commands byte-identical on repeat";
  if (!first_diff.empty()) d << ", first difference in " << first_diff;
  d << ", pack mapping re-verified with exit " << verify_code;
  return {identical == commands.size() && verify_code == 0, d.str()};
}

}  // namespace

// Optional arguments pick criteria by number; none runs all of them.
int main(int argc, char** argv) {
  for (int i = 1; i < argc; ++i) selected.push_back(std::atoi(argv[i]));
  report(1, "packing soundness", packing_soundness);
  report(2, "engine completeness at n=40000", engine_completeness);
  report(3, "Ore agreement", ore_agreement);
  report(4, "small-n formula", small_n_formula);
  report(5, "uniqueness for cycles", uniqueness);
  report(6, "second extremal graph", second_extremal_graph);
  report(7, "hypergraph chain", proposition_chain);
  report(8, "tightness construction", tightness);
  report(9, "reservoir statistics", lemma2_statistics);
  report(10, "determinism", determinism);
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
  return failures == 0 ? 0 : 1;
}
