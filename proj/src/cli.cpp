#include "turan/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <json.hpp>
#include <optional>
#include <sstream>

#include "turan/constructions.hpp"
#include "turan/error.hpp"
#include "turan/experiments.hpp"
#include "turan/hypergraph.hpp"
#include "turan/io.hpp"
#include "turan/oracle.hpp"
#include "turan/packing.hpp"

namespace turan::cli {

namespace {

using Json = nlohmann::ordered_json;

Json edges_json(const Graph& g) {
  Json arr = Json::array();
  for (const auto& [u, v] : g.edges()) arr.push_back({u, v});
  return arr;
}

Json report_json(const ConstructionReport& r) {
  Json claims = Json::array();
  for (const auto& c : r.claims) {
    claims.push_back({{"name", c.name}, {"expected", c.expected}, {"observed", c.observed},
                      {"status", std::string(to_string(c.status))}});
  }
  return {{"construction", r.name}, {"claims", claims}, {"all_hold", r.all_hold()}};
}

Json event_json(const trace::Event& e) {
  Json j{{"seq", e.seq}};
  std::visit(
      [&](const auto& b) {
        using T = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<T, trace::StageBoundary>) {
          j["type"] = "stage";
          j["stage"] = b.stage;
          j["begin"] = b.begin;
        } else if constexpr (std::is_same_v<T, trace::SetSize>) {
          j["type"] = "set";
          j["name"] = b.name;
          j["index"] = b.index;
          j["size"] = b.size;
        } else if constexpr (std::is_same_v<T, trace::ReservoirAttempt>) {
          j["type"] = "reservoir-attempt";
          j["attempt"] = b.attempt;
          j["seed"] = b.seed;
          j["c_bound_held"] = b.c_bound_held;
          j["d_bound_held"] = b.d_bound_held;
          j["max_c"] = b.max_c;
          j["min_d"] = b.min_d;
        } else if constexpr (std::is_same_v<T, trace::Match>) {
          j["type"] = "match";
          j["stage"] = b.stage;
          j["g"] = b.g;
          j["h"] = b.h;
        } else if constexpr (std::is_same_v<T, trace::Checkpoint>) {
          j["type"] = "checkpoint";
          j["index"] = b.index;
          j["matched"] = b.matched;
          j["matched_neighbors"] = b.matched_neighbors;
          j["neighbors_covered"] = b.neighbors_covered;
          j["matched_in_reservoirs"] = b.matched_in_reservoirs;
          j["count_bounded"] = b.count_bounded;
        } else if constexpr (std::is_same_v<T, trace::IndependentSplit>) {
          j["type"] = "independent-split";
          j["j_size"] = b.j_size;
          j["k_size"] = b.k_size;
        } else if constexpr (std::is_same_v<T, trace::TargetPool>) {
          j["type"] = "target-pool";
          j["min_non_forbidden"] = b.min_non_forbidden;
          j["min_unmatched_eligible"] = b.min_unmatched_eligible;
        } else if constexpr (std::is_same_v<T, trace::HallGraph>) {
          j["type"] = "hall-graph";
          j["side"] = b.side;
          j["min_left_degree"] = b.min_left_degree;
          j["min_right_degree"] = b.min_right_degree;
          j["matching_size"] = b.matching_size;
        }
      },
      e.body);
  return j;
}

void emit(std::ostream& out, const Json& j) { out << j.dump() << '\n'; }

int input_error(std::ostream& out, std::ostream& err, const Error& e) {
  err << "error: " << e.what() << '\n';
  emit(out, {{"format", 1}, {"outcome", "input-error"}, {"error", std::string(to_string(e.kind()))},
             {"message", e.what()}});
  return kExitInputError;
}

PackingMap read_mapping(const std::string& path) {
  Json j;
  try {
    j = Json::parse(io::read_text(path));
  } catch (const Json::parse_error& e) {
    throw Error(ErrorKind::ParseError, path + ": " + e.what());
  }
  const Json* arr = &j;
  if (j.is_object()) {
    if (!j.contains("mapping")) throw Error(ErrorKind::ParseError, path + ": no \"mapping\" field");
    arr = &j["mapping"];
  }
  if (!arr->is_array()) throw Error(ErrorKind::ParseError, path + ": mapping must be an array");
  PackingMap map;
  for (const auto& x : *arr) {
    if (!x.is_number_unsigned()) throw Error(ErrorKind::ParseError, path + ": mapping entries must be vertices");
    const auto v = x.get<std::uint64_t>();
    map.forward.push_back(v > kUnmatched ? kUnmatched : static_cast<Vertex>(v));
  }
  return map;
}

struct PackArgs {
  std::string g_path, h_path, trace_out;
  PackingConfig cfg;
};

struct VerifyArgs {
  std::string g_path, h_path, mapping_path;
};

struct ConstructArgs {
  std::string name, out_prefix;
  std::size_t n = 0, delta = 0, k = 0, s = 0;
};

struct ExperimentArgs {
  std::string model = "perfect-matching", out_path, g_model = "random", h_model = "near-regular";
  std::size_t n = 40000, trials = 100, delta = 1;
  std::vector<std::size_t> n_list{400};
  std::vector<double> divisors{1.5, 2.0, 5.0, 10.0, 20.0};
  std::uint64_t seed = 0;
  PackingConfig cfg;
};

struct HyperArgs {
  std::string host_path, pattern_path;
  bool exhaustive = false;
};

void add_config_options(CLI::App* cmd, PackingConfig& cfg) {
  cmd->add_option("--maxdeg_divisor", cfg.maxdeg_divisor, "Delta(H) <= sqrt(n) / divisor")->capture_default_str();
  cmd->add_option("--high_degree_coeff", cfg.high_degree_coeff)->capture_default_str();
  cmd->add_option("--small_degree_cap", cfg.small_degree_cap)->capture_default_str();
  cmd->add_option("--sample_prob_exponent", cfg.sample_prob_exponent)->capture_default_str();
  cmd->add_option("--c_bound_coeff", cfg.c_bound_coeff)->capture_default_str();
  cmd->add_option("--d_bound_coeff", cfg.d_bound_coeff)->capture_default_str();
  cmd->add_option("--d_range_coeff", cfg.d_range_coeff)->capture_default_str();
  cmd->add_option("--s_size_coeff", cfg.s_size_coeff)->capture_default_str();
  cmd->add_option("--retries,--max_resamples", cfg.max_resamples, "Reservoir resamples")->capture_default_str();
  cmd->add_option("--seed", cfg.seed)->capture_default_str();
}

int cmd_pack(const PackArgs& a, std::ostream& out, std::ostream& err) {
  const Graph g = io::read_edge_list(a.g_path);
  const Graph h = io::read_edge_list(a.h_path);
  const PackingOutcome outcome = pack(g, h, a.cfg);
  Json j{{"format", 1}, {"outcome", outcome.success() ? "success" : "violation"}};
  if (outcome.success()) {
    j["mapping"] = outcome.map().forward;
    j["stage"] = nullptr;
    j["reason"] = nullptr;
    j["verified"] = verify_packing(g, h, outcome.map());
  } else {
    j["mapping"] = nullptr;
    j["stage"] = outcome.violation().stage;
    j["reason"] = outcome.violation().reason;
    j["verified"] = false;
  }
  j["seed"] = a.cfg.seed;
  j["rng"] = std::string(kRngName);
  j["resamples"] = outcome.trace.resamples();
  if (!a.trace_out.empty()) {
    Json events = Json::array();
    for (const auto& e : outcome.trace.events()) events.push_back(event_json(e));
    io::write_text(a.trace_out, Json{{"format", 1}, {"events", events}}.dump() + "\n");
  }
  emit(out, j);
  if (!outcome.success()) {
    err << "violation in " << outcome.violation().stage << ": " << outcome.violation().reason << '\n';
    return kExitViolation;
  }
  return kExitOk;
}

int cmd_verify(const VerifyArgs& a, std::ostream& out, std::ostream& err) {
  const Graph g = io::read_edge_list(a.g_path);
  const Graph h = io::read_edge_list(a.h_path);
  const PackingMap map = read_mapping(a.mapping_path);
  const bool ok = verify_packing(g, h, map);
  emit(out, {{"format", 1}, {"valid", ok}});
  if (!ok) {
    err << "mapping sends an edge of G onto an edge of H\n";
    return kExitVerifyFailed;
  }
  return kExitOk;
}

int cmd_construct(const ConstructArgs& a, std::ostream& out) {
  ConstructionReport report;
  std::vector<std::pair<std::string, std::string>> files;  // suffix, text
  Json params = Json::object();
  if (a.name == "lower-bound") {
    report = lower_bound_report(a.n, a.delta);
    params = {{"n", a.n}, {"delta", a.delta}};
  } else if (a.name == "tightness") {
    report = tightness_pair(a.k, a.delta).report;
    params = {{"k", a.k}, {"delta", a.delta}};
  } else if (a.name == "ore") {
    report = ore_report(a.n);
    params = {{"n", a.n}};
  } else if (a.name == "second-extremal") {
    report = second_extremal_report(a.n);
    params = {{"n", a.n}};
  } else if (a.name == "hyper-h") {
    report = counterexample_report(a.s);
    files.emplace_back("h", io::format_hypergraph(counterexample_h(a.s)));
    files.emplace_back("t", io::format_hypergraph(construction_t(5 * a.s + 1)));
    params = {{"s", a.s}};
  } else if (a.name == "hyper-t") {
    report = construction_t_report(a.n);
    files.emplace_back("t", io::format_hypergraph(construction_t(a.n)));
    params = {{"n", a.n}};
  } else {
    throw Error(ErrorKind::ParameterOutOfRange, "unknown construction '" + a.name + "'");
  }
  for (const auto& [name, g] : report.graphs) files.emplace_back(name, io::format_edge_list(g));

  Json j{{"format", 1}};
  const Json body = report_json(report);
  for (const auto& [key, value] : body.items()) j[key] = value;
  j["params"] = params;
  Json written = Json::array();
  if (!a.out_prefix.empty()) {
    for (const auto& [suffix, text] : files) {
      const std::string path = a.out_prefix + "_" + suffix + ".txt";
      io::write_text(path, text);
      written.push_back(path);
    }
    const std::string report_path = a.out_prefix + "_report.json";
    written.push_back(report_path);
    j["files"] = written;
    io::write_text(report_path, j.dump(2) + "\n");
  } else {
    j["files"] = written;
  }
  emit(out, j);
  return report.all_hold() ? kExitOk : kExitVerifyFailed;
}

int cmd_brute_ex(const std::string& h_path, std::ostream& out) {
  const Graph h = io::read_edge_list(h_path);
  const ExSearchResult r = brute_ex(h);
  emit(out, {{"format", 1},
             {"n", r.n},
             {"ex", r.ex_value},
             {"min_missing", r.min_missing},
             {"witness_missing", edges_json(r.witness_missing)}});
  return kExitOk;
}

int cmd_enumerate(const std::string& h_path, std::ostream& out) {
  const Graph h = io::read_edge_list(h_path);
  const std::vector<Graph> classes = enumerate_extremal(h);
  Json graphs = Json::array();
  for (const auto& g : classes) graphs.push_back({{"missing", edges_json(complement(g))}});
  emit(out, {{"format", 1},
             {"n", h.order()},
             {"ex", classes.empty() ? 0 : classes.front().edge_count()},
             {"classes", classes.size()},
             {"graphs", graphs}});
  return kExitOk;
}

int cmd_lemma2(const ExperimentArgs& a, std::ostream& out, std::ostream& err) {
  const auto table = experiments::lemma2_stats(a.n, a.model, a.trials, a.cfg, a.seed, a.delta);
  const std::string csv = experiments::lemma2_csv(table);
  const std::string summary = experiments::lemma2_summary(table);
  if (a.out_path.empty()) {
    out << csv;
    err << summary;
  } else {
    io::write_text(a.out_path, csv);
    out << summary;
  }
  return kExitOk;
}

int cmd_sweep(const ExperimentArgs& a, std::ostream& out, std::ostream& err) {
  const auto rows = experiments::constant_sweep(a.n_list, a.divisors, a.trials, a.seed, a.g_model, a.h_model);
  const std::string csv = experiments::sweep_csv(rows);
  std::ostringstream summary;
  for (const auto& r : rows) {
    summary << "n=" << r.n << " divisor=" << r.divisor << ' ';
    if (r.outside_theorem) {
      summary << "outside-theorem\n";
    } else {
      summary << "success rate " << experiments::fixed(static_cast<double>(r.successes) / static_cast<double>(r.trials))
              << '\n';
    }
  }
  if (a.out_path.empty()) {
    out << csv;
    err << summary.str();
  } else {
    io::write_text(a.out_path, csv);
    out << summary.str();
  }
  return kExitOk;
}

int cmd_hyper_check(const HyperArgs& a, std::ostream& out) {
  const Hypergraph3 host = io::read_hypergraph(a.host_path);
  const Hypergraph3 pattern = io::read_hypergraph(a.pattern_path);
  const ObstructionReport r = local_obstruction_check(host, pattern);
  const bool blocked = r.verdict == ObstructionVerdict::NoSpanningCopy;
  Json j{{"format", 1},
         {"verdict", blocked ? "NoSpanningCopy" : "Inconclusive"},
         {"colorable_in_host", r.colorable_in_host},
         {"non_colorable_in_pattern", r.non_colorable_in_pattern}};
  if (a.exhaustive) {
    const auto embedding = find_spanning_embedding(host, pattern);
    j["embedding"] = embedding ? Json(*embedding) : Json(nullptr);
  }
  emit(out, j);
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Packing and extremal-graph toolkit", "turan"};
  app.require_subcommand(1);

  PackArgs pack_args;
  auto* pack_cmd = app.add_subcommand("pack", "Pack G (missing edges) with H; print the bijection as JSON");
  pack_cmd->add_option("g_file", pack_args.g_path, "Edge list of G")->required();
  pack_cmd->add_option("h_file", pack_args.h_path, "Edge list of H")->required();
  pack_cmd->add_option("--trace-out", pack_args.trace_out, "Write the stage trace as JSON");
  add_config_options(pack_cmd, pack_args.cfg);

  VerifyArgs verify_args;
  auto* verify_cmd = app.add_subcommand("verify", "Check that a mapping packs G and H");
  verify_cmd->add_option("g_file", verify_args.g_path)->required();
  verify_cmd->add_option("h_file", verify_args.h_path)->required();
  verify_cmd->add_option("mapping", verify_args.mapping_path, "JSON array, or pack output")->required();

  ConstructArgs construct_args;
  auto* construct_cmd = app.add_subcommand("construct", "Build a named construction and check its claims");
  construct_cmd->add_option("name", construct_args.name)
      ->required()
      ->check(CLI::IsMember({"lower-bound", "tightness", "ore", "second-extremal", "hyper-h", "hyper-t"}));
  construct_cmd->add_option("--n", construct_args.n);
  construct_cmd->add_option("--delta", construct_args.delta);
  construct_cmd->add_option("--k", construct_args.k);
  construct_cmd->add_option("--s", construct_args.s);
  construct_cmd->add_option("--out", construct_args.out_prefix, "Prefix for the written files");

  std::string brute_path;
  auto* brute_cmd = app.add_subcommand("brute-ex", "Exact ex(n, H) for n <= 9");
  brute_cmd->add_option("h_file", brute_path)->required();

  std::string enumerate_path;
  auto* enumerate_cmd = app.add_subcommand("enumerate", "All extremal graphs for H up to isomorphism, n <= 8");
  enumerate_cmd->add_option("h_file", enumerate_path)->required();

  ExperimentArgs exp_args;
  auto* exp_cmd = app.add_subcommand("experiments", "Seeded Monte-Carlo experiments (CSV)");
  exp_cmd->require_subcommand(1);
  auto* lemma2_cmd = exp_cmd->add_subcommand("lemma2", "Reservoir event frequencies");
  lemma2_cmd->add_option("--n", exp_args.n)->capture_default_str();
  lemma2_cmd->add_option("--model", exp_args.model)->capture_default_str();
  lemma2_cmd->add_option("--trials", exp_args.trials)->capture_default_str();
  lemma2_cmd->add_option("--delta", exp_args.delta)->capture_default_str();
  lemma2_cmd->add_option("--out", exp_args.out_path, "CSV path; summary then goes to stdout");
  add_config_options(lemma2_cmd, exp_args.cfg);
  auto* sweep_cmd = exp_cmd->add_subcommand("sweep", "Success rate per (n, divisor)");
  sweep_cmd->add_option("--n", exp_args.n_list)->capture_default_str();
  sweep_cmd->add_option("--divisor", exp_args.divisors)->capture_default_str();
  sweep_cmd->add_option("--trials", exp_args.trials)->capture_default_str();
  sweep_cmd->add_option("--seed", exp_args.seed)->capture_default_str();
  sweep_cmd->add_option("--g-model", exp_args.g_model)->capture_default_str();
  sweep_cmd->add_option("--h-model", exp_args.h_model)->capture_default_str();
  sweep_cmd->add_option("--out", exp_args.out_path, "CSV path; summary then goes to stdout");

  HyperArgs hyper_args;
  auto* hyper_cmd = app.add_subcommand("hyper-check", "Link-colorability obstruction for 3-graphs");
  hyper_cmd->add_option("host", hyper_args.host_path)->required();
  hyper_cmd->add_option("pattern", hyper_args.pattern_path)->required();
  hyper_cmd->add_flag("--exhaustive", hyper_args.exhaustive, "Also search for an embedding (n <= 12)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInputError;
  }

  try {
    if (pack_cmd->parsed()) return cmd_pack(pack_args, out, err);
    if (verify_cmd->parsed()) return cmd_verify(verify_args, out, err);
    if (construct_cmd->parsed()) return cmd_construct(construct_args, out);
    if (brute_cmd->parsed()) return cmd_brute_ex(brute_path, out);
    if (enumerate_cmd->parsed()) return cmd_enumerate(enumerate_path, out);
    if (lemma2_cmd->parsed()) {
      exp_args.seed = exp_args.cfg.seed;
      return cmd_lemma2(exp_args, out, err);
    }
    if (sweep_cmd->parsed()) return cmd_sweep(exp_args, out, err);
    if (hyper_cmd->parsed()) return cmd_hyper_check(hyper_args, out);
  } catch (const Error& e) {
    return input_error(out, err, e);
  }
  return kExitInputError;
}

}  // namespace turan::cli
