#include "qdesk/runner.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include <gtest/gtest.h>

#include "qdesk/circuit_text.hpp"
#include "qdesk/statevec.hpp"

using namespace qdesk;
using namespace qdesk::cli;

namespace {

RunConfig config(std::string command, std::uint64_t seed, Json params) {
  RunConfig c;
  c.command = std::move(command);
  c.seed = seed;
  c.params = std::move(params);
  return c;
}

Json run_error(const RunConfig& c) {
  try {
    run(c);
  } catch (const std::exception& e) {
    return error_report(c, e);
  }
  ADD_FAILURE() << "expected " << c.command << " to fail";
  return {};
}

std::filesystem::path temp_file(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << text;
  return path;
}

}  // namespace

TEST(Cli, factor_report) {
  const Json r = run(config("factor", 42, {{"n", 15}}));
  EXPECT_EQ(r["version"], kReportVersion);
  EXPECT_EQ(r["command"], "factor");
  EXPECT_EQ(r["config"]["seed"], 42);
  const auto f = r["result"]["factors"];
  ASSERT_TRUE(f.is_array());
  EXPECT_EQ(f[0].get<int>() * f[1].get<int>(), 15);
  EXPECT_FALSE(r.contains("wall_time_ms"));
}

TEST(Cli, qft_report) {
  const Json r = run(config("qft", kDefaultSeed, {{"qubits", 6}}));
  EXPECT_EQ(r["result"]["gate_count"], 21);
  EXPECT_EQ(r["result"]["fidelity"], 1.0);
}

TEST(Cli, simon_report) {
  const Json r = run(config("simon", 1, {{"n", 3}, {"c", "101"}}));
  EXPECT_EQ(r["result"]["recovered_c"], "101");
}

TEST(Cli, grover_and_trace) {
  const auto trace = std::filesystem::temp_directory_path() / "qdesk_trace_test.json";
  const Json r = run(config("grover", 3, {{"qubits", 10}, {"targets", {777}}, {"trace", trace.string()}}));
  EXPECT_EQ(r["result"]["found"], 777);
  EXPECT_EQ(r["result"]["iterations"], 25);
  std::ifstream in(trace);
  const Json t = Json::parse(in);
  EXPECT_EQ(t["marked_probability"].size(), 26U);
  std::filesystem::remove(trace);
}

TEST(Cli, circuit_run_bell) {
  const auto path = temp_file("qdesk_bell_test.qc", "H 1\nCNOT 1,2\n");
  const Json r = run(config("circuit-run", 1, {{"file", path.string()}, {"shots", 100}}));
  const Json d = r["result"]["distribution"];
  EXPECT_EQ(d.size(), 2U);
  EXPECT_DOUBLE_EQ(d["00"].get<double>(), 0.5);
  EXPECT_DOUBLE_EQ(d["11"].get<double>(), 0.5);
  std::filesystem::remove(path);
}

TEST(Cli, reports_are_reproducible) {
  const std::vector<RunConfig> configs = {
      config("factor", 9, {{"n", 21}}),
      config("grover", 9, {{"qubits", 6}, {"targets", {5, 9}}}),
      config("simon", 9, {{"n", 4}, {"c", "0110"}}),
      config("simon-classical", 9, {{"n", 5}, {"trials", 50}}),
      config("qft", 9, {{"qubits", 5}, {"cutoff", 3}}),
  };
  for (const auto& c : configs) EXPECT_EQ(run(c).dump(), run(c).dump()) << c.command;
}

TEST(Cli, usage_errors_name_the_field) {
  const Json missing = run_error(config("factor", 1, Json::object()));
  EXPECT_EQ(missing["error"]["kind"], "usage");
  EXPECT_EQ(missing["error"]["field"], "n");
  EXPECT_EQ(exit_code_for(missing), 2);

  const Json bad_c = run_error(config("simon", 1, {{"n", 3}, {"c", "10"}}));
  EXPECT_EQ(bad_c["error"]["field"], "c");

  const Json unknown = run_error(config("teleport", 1, Json::object()));
  EXPECT_EQ(unknown["error"]["field"], "command");
}

TEST(Cli, resource_error_states_required_qubits) {
  const Json e = run_error(config("factor", 1, {{"n", 1000001}}));
  EXPECT_EQ(e["error"]["kind"], "resource");
  EXPECT_EQ(e["error"]["required_qubits"], 60);
  EXPECT_EQ(exit_code_for(e), 3);
}

TEST(Cli, domain_error_for_prime_power) {
  const Json e = run_error(config("factor", 1, {{"n", 49}}));
  EXPECT_EQ(e["error"]["kind"], "domain");
  EXPECT_EQ(exit_code_for(e), 4);
}

TEST(Cli, syntax_error_location) {
  const auto path = temp_file("qdesk_bad_test.qc", "H 1\nCNOT 1,1\n");
  const Json e = run_error(config("circuit-run", 1, {{"file", path.string()}}));
  EXPECT_EQ(e["error"]["kind"], "syntax");
  EXPECT_EQ(e["error"]["line"], 2);
  EXPECT_EQ(e["error"]["column"], 6);
  std::filesystem::remove(path);
}

TEST(Cli, seed_environment_override) {
  ::setenv(kSeedEnvVar, "777", 1);
  EXPECT_EQ(default_seed(), 777U);
  ::setenv(kSeedEnvVar, "abc", 1);
  EXPECT_THROW(default_seed(), UsageError);
  ::unsetenv(kSeedEnvVar);
  EXPECT_EQ(default_seed(), kDefaultSeed);
}

TEST(Cli, round_probability_digits) {
  EXPECT_EQ(round_probability(0.1234567890123456), 0.123456789012);
  EXPECT_EQ(round_probability(0.0), 0.0);
}
