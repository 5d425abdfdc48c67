#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include <json.hpp>

namespace qdesk::cli {

using Json = nlohmann::ordered_json;

inline constexpr const char* kReportVersion = "qdesk-report/1";
inline constexpr std::uint64_t kDefaultSeed = 12345;
inline constexpr const char* kSeedEnvVar = "QDESK_SEED";

/// Bad or missing command parameter; `field` names it.
class UsageError : public std::invalid_argument {
 public:
  UsageError(std::string field_, const std::string& message)
      : std::invalid_argument(message), field(std::move(field_)) {}
  std::string field;
};

struct RunConfig {
  std::string command;  // factor | grover | simon | simon-classical | qft | circuit-run
  std::uint64_t seed = kDefaultSeed;
  std::optional<std::string> output_path;
  bool timing = false;
  // Command-specific parameters, echoed into the report.
  Json params = Json::object();
};

/// Seed from the environment override, else the documented default.
std::uint64_t default_seed();

/// Runs the command and returns the report object. Side files requested in
/// params (distribution dump, trace, circuit text) are written here.
/// Throws UsageError, ResourceError, CircuitSyntaxError or std::domain_error.
Json run(const RunConfig& config);

/// Machine-readable error report for an exception escaping run().
Json error_report(const RunConfig& config, const std::exception& error);

/// Exit status for an error report's kind.
int exit_code_for(const Json& error_report);

/// Rounds to 12 significant digits.
double round_probability(double p);

/// Writes text to path through a temporary file and rename.
void write_atomically(const std::string& path, const std::string& text);

}  // namespace qdesk::cli
