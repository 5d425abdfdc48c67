#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "qdesk/gates.hpp"

namespace qdesk {

// Line-oriented circuit format, one gate per line:
//
//   GATE wire[,wire...] [key=value ...]   # optional comment
//
// Gate names: H X Z CNOT SWAP TOFFOLI CPHASE. CPHASE takes j=<int> k=<int>
// and applies diag(1, 1, 1, exp(2 pi i / 2^(k+1-j))). Wires are 1-based.
// Blank lines and lines starting with '#' are ignored.

class CircuitSyntaxError : public std::runtime_error {
 public:
  CircuitSyntaxError(int line, int column, const std::string& message);
  int line;
  int column;
};

/// Wire count defaults to the largest wire mentioned (at least 1).
Circuit parse_circuit(std::string_view text,
                      std::optional<int> n_wires = std::nullopt);

Circuit parse_circuit_file(const std::filesystem::path& path,
                           std::optional<int> n_wires = std::nullopt);

/// Inverse of parse_circuit. CUSTOM gates have no text form and throw
/// std::domain_error.
std::string to_text(const Circuit& circuit);

}  // namespace qdesk
