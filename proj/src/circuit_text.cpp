#include "qdesk/circuit_text.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

namespace qdesk {
namespace {

constexpr std::array kGateNames{GateKind::H,    GateKind::X,       GateKind::Z,
                                GateKind::CNOT, GateKind::SWAP,    GateKind::TOFFOLI,
                                GateKind::CPHASE};

std::string valid_names() {
  std::string s;
  for (auto kind : kGateNames) {
    if (!s.empty()) s += ", ";
    s += gate_name(kind);
  }
  return s;
}

struct Token {
  std::string_view text;
  int column;  // 1-based
};

std::vector<Token> split_ws(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i >= line.size()) break;
    const std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    out.push_back({line.substr(start, i - start), static_cast<int>(start) + 1});
  }
  return out;
}

int parse_int(std::string_view s, int line, int column, const char* what) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw CircuitSyntaxError(line, column,
                             std::string("expected integer ") + what + ", got '" +
                                 std::string(s) + "'");
  }
  return v;
}

std::vector<int> parse_wires(const Token& tok, int line) {
  std::vector<int> wires;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = tok.text.find(',', start);
    const std::string_view part =
        tok.text.substr(start, comma == std::string_view::npos ? std::string_view::npos
                                                               : comma - start);
    const int w = parse_int(part, line, tok.column + static_cast<int>(start), "wire");
    if (w < 1) {
      throw CircuitSyntaxError(line, tok.column + static_cast<int>(start),
                               "wire indices start at 1");
    }
    wires.push_back(w);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return wires;
}

GateOp build_op(GateKind kind, const std::vector<int>& wires,
                const std::vector<Token>& params, int line, int name_col,
                int wires_col) {
  auto expect = [&](std::size_t count) {
    if (wires.size() != count) {
      throw CircuitSyntaxError(line, wires_col,
                               std::string(gate_name(kind)) + " takes " +
                                   std::to_string(count) + " wire(s), got " +
                                   std::to_string(wires.size()));
    }
  };
  std::optional<int> j, k;
  for (const Token& p : params) {
    const auto eq = p.text.find('=');
    if (eq == std::string_view::npos) {
      throw CircuitSyntaxError(line, p.column, "expected key=value parameter");
    }
    const std::string_view key = p.text.substr(0, eq);
    const int value = parse_int(p.text.substr(eq + 1), line,
                                p.column + static_cast<int>(eq) + 1, "parameter");
    if (kind != GateKind::CPHASE || (key != "j" && key != "k")) {
      throw CircuitSyntaxError(line, p.column,
                               "unexpected parameter '" + std::string(key) +
                                   "' for " + std::string(gate_name(kind)));
    }
    (key == "j" ? j : k) = value;
  }
  try {
    switch (kind) {
      case GateKind::H: expect(1); return ops::h(wires[0]);
      case GateKind::X: expect(1); return ops::x(wires[0]);
      case GateKind::Z: expect(1); return ops::z(wires[0]);
      case GateKind::CNOT: expect(2); return ops::cnot(wires[0], wires[1]);
      case GateKind::SWAP: expect(2); return ops::swap(wires[0], wires[1]);
      case GateKind::TOFFOLI: expect(3); return ops::toffoli(wires[0], wires[1], wires[2]);
      case GateKind::CPHASE:
        expect(2);
        if (!j || !k) {
          throw CircuitSyntaxError(line, name_col, "CPHASE needs j= and k=");
        }
        return ops::cphase(wires[0], wires[1], *j, *k);
      case GateKind::CUSTOM: break;
    }
  } catch (const std::domain_error& e) {
    throw CircuitSyntaxError(line, wires_col, e.what());
  }
  throw CircuitSyntaxError(line, name_col, "unsupported gate");
}

}  // namespace

CircuitSyntaxError::CircuitSyntaxError(int line_, int column_, const std::string& message)
    : std::runtime_error("line " + std::to_string(line_) + ", column " +
                         std::to_string(column_) + ": " + message),
      line(line_), column(column_) {}

Circuit parse_circuit(std::string_view text, std::optional<int> n_wires) {
  std::vector<GateOp> parsed;
  int max_wire = 1;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = (nl == std::string_view::npos) ? text.size() + 1 : nl + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    const auto tokens = split_ws(line);
    if (tokens.empty()) continue;

    std::string upper(tokens[0].text);
    std::transform(upper.begin(), upper.end(), upper.begin(),
                   [](unsigned char ch) { return static_cast<char>(std::toupper(ch)); });
    const auto it = std::find_if(kGateNames.begin(), kGateNames.end(),
                                 [&](GateKind kind) { return gate_name(kind) == upper; });
    if (it == kGateNames.end()) {
      throw CircuitSyntaxError(line_no, tokens[0].column,
                               "unknown gate '" + std::string(tokens[0].text) +
                                   "'; valid gates: " + valid_names());
    }
    if (tokens.size() < 2) {
      throw CircuitSyntaxError(line_no, tokens[0].column + static_cast<int>(tokens[0].text.size()),
                               "missing wire list");
    }
    const auto wires = parse_wires(tokens[1], line_no);
    const std::vector<Token> params(tokens.begin() + 2, tokens.end());
    GateOp op = build_op(*it, wires, params, line_no, tokens[0].column, tokens[1].column);
    max_wire = std::max(max_wire, *std::max_element(wires.begin(), wires.end()));
    if (n_wires && max_wire > *n_wires) {
      throw CircuitSyntaxError(line_no, tokens[1].column,
                               "wire " + std::to_string(max_wire) +
                                   " exceeds the declared " +
                                   std::to_string(*n_wires) + " wires");
    }
    parsed.push_back(std::move(op));
  }
  Circuit circuit(n_wires.value_or(max_wire));
  for (auto& op : parsed) circuit.add(std::move(op));
  return circuit;
}

Circuit parse_circuit_file(const std::filesystem::path& path, std::optional<int> n_wires) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read circuit file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_circuit(buf.str(), n_wires);
}

std::string to_text(const Circuit& circuit) {
  std::ostringstream out;
  for (const auto& op : circuit.ops()) {
    if (op.kind == GateKind::CUSTOM) {
      throw std::domain_error("custom gates have no text form");
    }
    out << gate_name(op.kind) << ' ';
    for (std::size_t i = 0; i < op.wires.size(); ++i) {
      out << (i ? "," : "") << op.wires[i];
    }
    if (op.kind == GateKind::CPHASE) {
      out << " j=" << op.phase_j << " k=" << op.phase_k;
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace qdesk
