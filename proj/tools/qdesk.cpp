// qdesk: command-line front end. Every command prints one JSON report (or
// writes it to --output) and exits 0; failures print a JSON error object and
// exit nonzero.

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qdesk/runner.hpp"

namespace {

using qdesk::cli::Json;

struct Options {
  std::optional<std::uint64_t> seed;
  std::optional<std::string> output;
  bool timing = false;

  std::optional<std::int64_t> n, max_attempts, qubits, cutoff, max_rounds,
      trials, wires, shots;
  std::optional<std::string> c, dump_distribution, targets_file, trace, file, emit;
  std::vector<std::uint64_t> targets;
  bool no_swaps = false;
};

void add_common(CLI::App* sub, Options& o) {
  sub->add_option("--seed", o.seed, "RNG seed (default: $QDESK_SEED or 12345)");
  sub->add_option("--output,-o", o.output, "Write the JSON report here instead of stdout");
  sub->add_flag("--timing", o.timing, "Add wall_time_ms to the report (not reproducible)");
}

template <typename T>
void put(Json& params, const char* key, const std::optional<T>& v) {
  if (v) params[key] = *v;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qdesk: dense state-vector simulation of period finding, factoring and search"};
  app.require_subcommand(1);
  Options o;

  auto* factor = app.add_subcommand("factor", "Factor N by order finding");
  factor->add_option("--n", o.n, "Odd composite to factor")->required();
  factor->add_option("--max-attempts", o.max_attempts, "Random bases to try (default 8)");
  factor->add_option("--dump-distribution", o.dump_distribution,
                     "Write the first-register distribution of the last simulated x");

  auto* grover = app.add_subcommand("grover", "Search 2^k items for marked indices");
  grover->add_option("--qubits", o.qubits, "Register width k")->required();
  grover->add_option("--target", o.targets, "Marked index (repeatable)");
  grover->add_option("--targets-file", o.targets_file, "Whitespace-separated marked indices");
  grover->add_option("--trace", o.trace, "Write per-iteration marked probability here");

  auto* simon = app.add_subcommand("simon", "Recover a hidden xor shift");
  simon->add_option("--n", o.n, "Bits per register")->required();
  simon->add_option("--c", o.c, "Hidden shift as a bit string")->required();
  simon->add_option("--max-rounds", o.max_rounds, "Sampling budget (default 4n)");

  auto* classical = app.add_subcommand("simon-classical", "Classical collision-search baseline");
  classical->add_option("--n", o.n, "Bits per register")->required();
  classical->add_option("--trials", o.trials, "Random oracles to try (default 200)");

  auto* qft = app.add_subcommand("qft", "Build a QFT circuit and report its gates and fidelity");
  qft->add_option("--qubits", o.qubits, "Transform width k")->required();
  qft->add_option("--cutoff", o.cutoff, "Drop phases below 2 pi / 2^m");
  qft->add_flag("--no-swaps", o.no_swaps, "Leave the output bit-reversed");
  qft->add_option("--emit", o.emit, "Write the circuit in text form here");

  auto* circuit = app.add_subcommand("circuit-run", "Run a circuit file on |0...0>");
  circuit->add_option("--file", o.file, "Circuit text file")->required();
  circuit->add_option("--wires", o.wires, "Register width (default: largest wire used)");
  circuit->add_option("--shots", o.shots, "Also sample this many measurements");

  for (auto* sub : {factor, grover, simon, classical, qft, circuit}) add_common(sub, o);

  qdesk::cli::RunConfig config;
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    config.command = app.get_subcommands().empty() ? "" : app.get_subcommands().front()->get_name();
    const qdesk::cli::UsageError err("arguments", e.what());
    std::cout << qdesk::cli::error_report(config, err).dump(2) << "\n";
    return 2;
  }

  config.command = app.get_subcommands().front()->get_name();
  Json& p = config.params;
  put(p, "n", o.n);
  put(p, "c", o.c);
  put(p, "max_attempts", o.max_attempts);
  put(p, "max_rounds", o.max_rounds);
  put(p, "trials", o.trials);
  put(p, "qubits", o.qubits);
  if (!o.targets.empty()) p["targets"] = o.targets;
  put(p, "targets_file", o.targets_file);
  put(p, "cutoff", o.cutoff);
  if (config.command == "qft") p["no_swaps"] = o.no_swaps;
  put(p, "file", o.file);
  put(p, "wires", o.wires);
  put(p, "shots", o.shots);
  put(p, "dump_distribution", o.dump_distribution);
  put(p, "trace", o.trace);
  put(p, "emit", o.emit);
  config.output_path = o.output;
  config.timing = o.timing;

  Json report;
  int status = 0;
  try {
    config.seed = o.seed ? *o.seed : qdesk::cli::default_seed();
    report = qdesk::cli::run(config);
  } catch (const std::exception& e) {
    report = qdesk::cli::error_report(config, e);
    status = qdesk::cli::exit_code_for(report);
  }

  const std::string text = report.dump(2) + "\n";
  if (config.output_path && status == 0) {
    try {
      qdesk::cli::write_atomically(*config.output_path, text);
    } catch (const std::exception& e) {
      std::cout << qdesk::cli::error_report(config, e).dump(2) << "\n";
      return 5;
    }
  } else {
    std::cout << text;
  }
  return status;
}
