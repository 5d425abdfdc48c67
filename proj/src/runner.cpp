#include "qdesk/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "qdesk/circuit_text.hpp"
#include "qdesk/grover.hpp"
#include "qdesk/number_theory.hpp"
#include "qdesk/qft.hpp"
#include "qdesk/rng.hpp"
#include "qdesk/shor.hpp"
#include "qdesk/simon.hpp"
#include "qdesk/statevec.hpp"

namespace qdesk::cli {
namespace {

// Probabilities below this are treated as exact zeros in reports.
constexpr double kReportFloor = 1e-13;

std::int64_t require_int(const Json& params, const char* key) {
  if (!params.contains(key) || params[key].is_null()) {
    throw UsageError(key, std::string("missing required parameter --") + key);
  }
  if (!params[key].is_number_integer()) {
    throw UsageError(key, std::string("--") + key + " must be an integer");
  }
  return params[key].get<std::int64_t>();
}

std::optional<std::int64_t> optional_int(const Json& params, const char* key) {
  if (!params.contains(key) || params[key].is_null()) return std::nullopt;
  return require_int(params, key);
}

std::optional<std::string> optional_string(const Json& params, const char* key) {
  if (!params.contains(key) || params[key].is_null()) return std::nullopt;
  return params[key].get<std::string>();
}

void require_range(std::int64_t v, std::int64_t lo, std::int64_t hi, const char* key) {
  if (v < lo || v > hi) {
    throw UsageError(key, std::string("--") + key + " must be in [" +
                              std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
}

Json distribution_json(const Distribution& dist) {
  Json out = Json::object();
  for (std::uint64_t i = 0; i < dist.size(); ++i) {
    if (dist[i] > kReportFloor) {
      out[bit_string(i, dist.n_qubits)] = round_probability(dist[i]);
    }
  }
  return out;
}

Json pair_json(const std::optional<std::pair<std::uint64_t, std::uint64_t>>& p) {
  if (!p) return nullptr;
  return Json::array({p->first, p->second});
}

template <typename T>
Json opt_json(const std::optional<T>& v) {
  return v ? Json(*v) : Json(nullptr);
}

Json run_factor(const RunConfig& cfg) {
  const auto n = require_int(cfg.params, "n");
  require_range(n, 3, std::int64_t{1} << 20, "n");
  const auto max_attempts = optional_int(cfg.params, "max_attempts").value_or(8);
  require_range(max_attempts, 1, 1000, "max_attempts");
  const auto N = static_cast<std::uint64_t>(n);

  const shor::FactorReport rep = shor::factor(N, static_cast<int>(max_attempts), cfg.seed);

  Json attempts = Json::array();
  for (const auto& a : rep.attempts) {
    attempts.push_back({{"index", a.index},
                        {"x", a.x},
                        {"outcome", a.outcome},
                        {"measured_c", opt_json(a.measured_c)},
                        {"recovered_r", opt_json(a.recovered_r)},
                        {"factors", pair_json(a.factors)}});
  }
  Json result = {{"N", rep.N},
                 {"L", bit_length(N)},
                 {"qubits", 3 * bit_length(N)},
                 {"x", opt_json(rep.x)},
                 {"measured_c", opt_json(rep.measured_c)},
                 {"recovered_r", opt_json(rep.recovered_r)},
                 {"factors", pair_json(rep.factors)},
                 {"failure", rep.failure.empty() ? Json(nullptr) : Json(rep.failure)},
                 {"attempts", attempts}};

  if (const auto dump = optional_string(cfg.params, "dump_distribution")) {
    // Distribution of the last x that went through the circuit.
    std::optional<std::uint64_t> x;
    for (const auto& a : rep.attempts) {
      if (a.measured_c) x = a.x;
    }
    Json d = {{"N", N}, {"x", opt_json(x)}, {"register_qubits", 2 * bit_length(N)}};
    Json probs = Json::object();
    if (x) {
      const auto dist = shor::order_finding_distribution(shor::FactoringInstance::make(N, *x));
      for (std::uint64_t c = 0; c < dist.size(); ++c) {
        if (dist[c] > kReportFloor) probs[std::to_string(c)] = round_probability(dist[c]);
      }
    }
    d["probabilities"] = probs;
    write_atomically(*dump, d.dump(2) + "\n");
  }
  return result;
}

std::vector<std::uint64_t> read_targets(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("targets_file", "cannot read " + path);
  std::vector<std::uint64_t> out;
  std::string tok;
  while (in >> tok) {
    try {
      std::size_t used = 0;
      const auto v = std::stoull(tok, &used);
      if (used != tok.size()) throw std::invalid_argument(tok);
      out.push_back(v);
    } catch (const std::exception&) {
      throw UsageError("targets_file", "not a non-negative integer: '" + tok + "'");
    }
  }
  return out;
}

Json run_grover(const RunConfig& cfg) {
  const auto k = require_int(cfg.params, "qubits");
  if (k > kMaxQubits) throw ResourceError(static_cast<int>(k), kMaxQubits);
  require_range(k, 1, kMaxQubits, "qubits");
  std::vector<std::uint64_t> targets;
  if (cfg.params.contains("targets")) {
    for (const auto& t : cfg.params["targets"]) targets.push_back(t.get<std::uint64_t>());
  }
  if (const auto file = optional_string(cfg.params, "targets_file")) {
    const auto more = read_targets(*file);
    targets.insert(targets.end(), more.begin(), more.end());
  }
  if (targets.empty()) throw UsageError("target", "give --target or --targets-file");
  const std::uint64_t N = std::uint64_t{1} << k;
  for (auto t : targets) {
    if (t >= N) throw UsageError("target", "target " + std::to_string(t) + " >= 2^qubits");
  }
  std::sort(targets.begin(), targets.end());
  targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
  if (targets.size() >= N) throw UsageError("target", "every item is marked");

  const auto problem = grover::SearchProblem::of_targets(static_cast<int>(k), targets);
  const grover::GroverRun run = grover::run_grover(problem, cfg.seed);

  if (const auto trace = optional_string(cfg.params, "trace")) {
    Json t = Json::array();
    for (double p : run.trace) t.push_back(round_probability(p));
    write_atomically(*trace, Json{{"iterations", run.iterations},
                                  {"marked_probability", t}}.dump(2) + "\n");
  }
  return {{"qubits", k},
          {"N", N},
          {"targets", targets},
          {"target_count", targets.size()},
          {"iterations", run.iterations},
          {"oracle_calls", run.oracle_calls},
          {"success_probability", round_probability(run.final_probability)},
          {"found", run.found},
          {"success", run.success}};
}

Json run_simon(const RunConfig& cfg) {
  const auto n = require_int(cfg.params, "n");
  if (2 * n > kMaxQubits) throw ResourceError(static_cast<int>(2 * n), kMaxQubits);
  require_range(n, 1, simon::kMaxOracleBits, "n");
  const auto c_text = optional_string(cfg.params, "c");
  if (!c_text) throw UsageError("c", "missing required parameter --c");
  if (c_text->size() != static_cast<std::size_t>(n)) {
    throw UsageError("c", "--c must be a bit string of length n");
  }
  simon::BitVector c = 0;
  try {
    c = parse_bit_string(*c_text);
  } catch (const std::invalid_argument& e) {
    throw UsageError("c", e.what());
  }
  if (c == 0) throw UsageError("c", "--c must be nonzero");
  const auto max_rounds = optional_int(cfg.params, "max_rounds").value_or(4 * n);
  require_range(max_rounds, n, 100000, "max_rounds");

  const auto oracle = simon::make_oracle(static_cast<int>(n), c, derive_seed(cfg.seed, 0));
  const auto run = simon::run_simon(oracle, static_cast<int>(max_rounds), derive_seed(cfg.seed, 1));
  Json samples = Json::array();
  for (auto y : run.samples) samples.push_back(bit_string(y, static_cast<int>(n)));
  return {{"n", n},
          {"c", *c_text},
          {"recovered_c", run.c ? Json(bit_string(*run.c, static_cast<int>(n))) : Json(nullptr)},
          {"rounds", run.rounds},
          {"hadamards", run.hadamards},
          {"oracle_calls", run.oracle_calls},
          {"samples", samples},
          {"failure", run.failure.empty() ? Json(nullptr) : Json(run.failure)}};
}

Json run_simon_classical(const RunConfig& cfg) {
  const auto n = require_int(cfg.params, "n");
  require_range(n, 1, simon::kMaxOracleBits, "n");
  const auto trials = optional_int(cfg.params, "trials").value_or(200);
  require_range(trials, 1, 1000000, "trials");
  const std::uint64_t size = std::uint64_t{1} << n;

  std::vector<int> queries;
  bool all_correct = true;
  for (std::int64_t t = 0; t < trials; ++t) {
    const std::uint64_t sub = derive_seed(cfg.seed, static_cast<std::uint64_t>(t));
    Rng rng = make_rng(sub);
    const simon::BitVector c = 1 + uniform_below(rng, size - 1);
    const auto oracle = simon::make_oracle(static_cast<int>(n), c, derive_seed(sub, 0));
    const auto res = simon::classical_query_baseline(oracle, derive_seed(sub, 1));
    queries.push_back(res.queries);
    all_correct = all_correct && res.c == c;
  }
  std::vector<int> sorted = queries;
  std::sort(sorted.begin(), sorted.end());
  const std::size_t mid = sorted.size() / 2;
  const double median = sorted.size() % 2 ? sorted[mid] : 0.5 * (sorted[mid - 1] + sorted[mid]);
  double mean = 0;
  for (int q : queries) mean += q;
  mean /= static_cast<double>(queries.size());
  return {{"n", n},
          {"trials", trials},
          {"median_queries", median},
          {"mean_queries", round_probability(mean)},
          {"min_queries", sorted.front()},
          {"max_queries", sorted.back()},
          {"all_recovered", all_correct}};
}

Json run_qft(const RunConfig& cfg) {
  const auto k = require_int(cfg.params, "qubits");
  if (k > kMaxQubits) throw ResourceError(static_cast<int>(k), kMaxQubits);
  require_range(k, 1, kMaxQubits, "qubits");
  QftSpec spec{static_cast<int>(k), std::nullopt, true};
  if (const auto m = optional_int(cfg.params, "cutoff")) {
    require_range(*m, 1, k, "cutoff");
    spec.cutoff = static_cast<int>(*m);
  }
  spec.bit_reversal_swaps = !cfg.params.value("no_swaps", false);
  const Circuit circuit = build_qft_circuit(spec);
  const auto h = circuit.count(GateKind::H);
  const auto phases = circuit.count(GateKind::CPHASE);

  Json fidelity = nullptr;
  if (k <= kMaxFidelityQubits) {
    fidelity = round_probability(qft_fidelity(
        static_cast<int>(k), circuit,
        spec.bit_reversal_swaps ? OutputOrder::Standard : OutputOrder::BitReversed));
  }
  if (const auto emit = optional_string(cfg.params, "emit")) {
    write_atomically(*emit, to_text(circuit));
  }
  return {{"qubits", k},
          {"cutoff", spec.cutoff ? Json(*spec.cutoff) : Json(nullptr)},
          {"bit_reversal_swaps", spec.bit_reversal_swaps},
          {"hadamard_gates", h},
          {"phase_gates", phases},
          {"swap_gates", circuit.count(GateKind::SWAP)},
          {"gate_count", h + phases},
          {"total_gates", circuit.size()},
          {"fidelity", fidelity}};
}

Json run_circuit(const RunConfig& cfg) {
  const auto file = optional_string(cfg.params, "file");
  if (!file) throw UsageError("file", "missing required parameter --file");
  std::optional<int> wires;
  if (const auto w = optional_int(cfg.params, "wires")) {
    if (*w > kMaxQubits) throw ResourceError(static_cast<int>(*w), kMaxQubits);
    require_range(*w, 1, kMaxQubits, "wires");
    wires = static_cast<int>(*w);
  }
  if (!std::filesystem::exists(*file)) throw UsageError("file", "no such file: " + *file);
  const Circuit circuit = parse_circuit_file(*file, wires);
  check_qubit_count(circuit.n_wires());
  const StateVector out = apply_circuit(init_basis(circuit.n_wires(), 0), circuit);
  const Distribution dist = distribution(out);
  Json result = {{"wires", circuit.n_wires()},
                 {"gate_count", circuit.size()},
                 {"distribution", distribution_json(dist)}};
  const auto shots = optional_int(cfg.params, "shots").value_or(0);
  require_range(shots, 0, 10000000, "shots");
  if (shots > 0) {
    std::vector<std::uint64_t> counts(dist.size(), 0);
    for (auto s : sample(dist, cfg.seed, static_cast<std::size_t>(shots))) ++counts[s];
    Json c = Json::object();
    for (std::uint64_t i = 0; i < counts.size(); ++i) {
      if (counts[i]) c[bit_string(i, dist.n_qubits)] = counts[i];
    }
    result["samples"] = c;
  }
  return result;
}

}  // namespace

double round_probability(double p) {
  if (p == 0.0 || !std::isfinite(p)) return p;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", p);
  return std::strtod(buf, nullptr);
}

std::uint64_t default_seed() {
  if (const char* env = std::getenv(kSeedEnvVar); env && *env) {
    try {
      std::size_t used = 0;
      const auto v = std::stoull(env, &used);
      if (used == std::string_view(env).size()) return v;
    } catch (const std::exception&) {
    }
    throw UsageError("seed", std::string(kSeedEnvVar) + " must be a non-negative integer");
  }
  return kDefaultSeed;
}

void write_atomically(const std::string& path, const std::string& text) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    const auto fail = [&] {
      return std::filesystem::filesystem_error(
          "cannot write", tmp, std::make_error_code(std::errc::io_error));
    };
    if (!out) throw fail();
    out << text;
    if (!out) throw fail();
  }
  std::filesystem::rename(tmp, path);
}

Json run(const RunConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  Json result;
  if (config.command == "factor") {
    result = run_factor(config);
  } else if (config.command == "grover") {
    result = run_grover(config);
  } else if (config.command == "simon") {
    result = run_simon(config);
  } else if (config.command == "simon-classical") {
    result = run_simon_classical(config);
  } else if (config.command == "qft") {
    result = run_qft(config);
  } else if (config.command == "circuit-run") {
    result = run_circuit(config);
  } else {
    throw UsageError("command", "unknown command '" + config.command + "'");
  }
  Json cfg = {{"seed", config.seed}};
  for (const auto& [key, value] : config.params.items()) cfg[key] = value;
  Json report = {{"version", kReportVersion},
                 {"command", config.command},
                 {"config", cfg},
                 {"result", result}};
  if (config.timing) {
    const auto elapsed = std::chrono::steady_clock::now() - start;
    report["wall_time_ms"] =
        std::chrono::duration<double, std::milli>(elapsed).count();
  }
  return report;
}

Json error_report(const RunConfig& config, const std::exception& error) {
  Json err = {{"kind", "internal"}, {"message", error.what()}};
  if (const auto* usage = dynamic_cast<const UsageError*>(&error)) {
    err["kind"] = "usage";
    err["field"] = usage->field;
  } else if (const auto* res = dynamic_cast<const ResourceError*>(&error)) {
    err["kind"] = "resource";
    err["required_qubits"] = res->required_qubits;
    err["max_qubits"] = kMaxQubits;
  } else if (const auto* syn = dynamic_cast<const CircuitSyntaxError*>(&error)) {
    err["kind"] = "syntax";
    err["line"] = syn->line;
    err["column"] = syn->column;
  } else if (dynamic_cast<const std::domain_error*>(&error) ||
             dynamic_cast<const std::invalid_argument*>(&error)) {
    err["kind"] = "domain";
  } else if (dynamic_cast<const std::filesystem::filesystem_error*>(&error)) {
    err["kind"] = "io";
  }
  return {{"version", kReportVersion}, {"command", config.command}, {"error", err}};
}

int exit_code_for(const Json& report) {
  const std::string kind = report.at("error").at("kind").get<std::string>();
  if (kind == "usage" || kind == "syntax") return 2;
  if (kind == "resource") return 3;
  if (kind == "domain") return 4;
  if (kind == "io") return 5;
  return 1;
}

}  // namespace qdesk::cli
