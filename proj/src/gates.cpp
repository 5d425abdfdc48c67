#include "qdesk/gates.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace qdesk {

double unitarity_error(const Matrix& m) {
  const Matrix product = m * m.adjoint();
  return (product - Matrix::Identity(m.rows(), m.cols())).cwiseAbs().maxCoeff();
}

GateMatrix::GateMatrix(Matrix entries) : arity_(0), entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols()) {
    throw std::domain_error("gate matrix must be square");
  }
  switch (entries_.rows()) {
    case 2: arity_ = 1; break;
    case 4: arity_ = 2; break;
    case 8: arity_ = 3; break;
    default:
      throw std::domain_error("gate matrix must be 2x2, 4x4 or 8x8");
  }
  if (!entries_.allFinite() || unitarity_error(entries_) > kUnitaryTolerance) {
    throw std::domain_error("gate matrix is not unitary");
  }
}

GateMatrix identity_gate(int arity) {
  if (arity < 1 || arity > 3) throw std::domain_error("arity must be 1, 2 or 3");
  return GateMatrix(Matrix::Identity(1 << arity, 1 << arity));
}

GateMatrix hadamard() {
  const double s = 1.0 / std::numbers::sqrt2;
  Matrix m(2, 2);
  m << s, s,
       s, -s;
  return GateMatrix(std::move(m));
}

GateMatrix pauli_x() {
  Matrix m(2, 2);
  m << 0, 1,
       1, 0;
  return GateMatrix(std::move(m));
}

GateMatrix pauli_z() {
  Matrix m(2, 2);
  m << 1, 0,
       0, -1;
  return GateMatrix(std::move(m));
}

GateMatrix cnot() {
  Matrix m(4, 4);
  m << 1, 0, 0, 0,
       0, 1, 0, 0,
       0, 0, 0, 1,
       0, 0, 1, 0;
  return GateMatrix(std::move(m));
}

GateMatrix swap_gate() {
  Matrix m(4, 4);
  m << 1, 0, 0, 0,
       0, 0, 1, 0,
       0, 1, 0, 0,
       0, 0, 0, 1;
  return GateMatrix(std::move(m));
}

GateMatrix toffoli() {
  Matrix m = Matrix::Identity(8, 8);
  m(6, 6) = 0;
  m(7, 7) = 0;
  m(6, 7) = 1;
  m(7, 6) = 1;
  return GateMatrix(std::move(m));
}

GateMatrix controlled_phase(int j, int k) {
  if (j < 0 || k < 1 || j >= k) {
    throw std::domain_error("controlled_phase requires 0 <= j < k");
  }
  Matrix m = Matrix::Identity(4, 4);
  // 2 pi / 2^(k+1-j), exact in binary for every exponent we can reach.
  const double angle = 2.0 * std::numbers::pi * std::ldexp(1.0, -(k + 1 - j));
  m(3, 3) = std::polar(1.0, angle);
  return GateMatrix(std::move(m));
}

std::string_view gate_name(GateKind kind) {
  switch (kind) {
    case GateKind::H: return "H";
    case GateKind::X: return "X";
    case GateKind::Z: return "Z";
    case GateKind::CNOT: return "CNOT";
    case GateKind::SWAP: return "SWAP";
    case GateKind::TOFFOLI: return "TOFFOLI";
    case GateKind::CPHASE: return "CPHASE";
    case GateKind::CUSTOM: return "CUSTOM";
  }
  return "?";
}

GateOp::GateOp(GateKind kind_, GateMatrix matrix_, std::vector<int> wires_,
               int j, int k)
    : kind(kind_), matrix(std::move(matrix_)), wires(std::move(wires_)),
      phase_j(j), phase_k(k) {
  if (static_cast<int>(wires.size()) != matrix.arity()) {
    throw std::domain_error("gate on " + std::to_string(matrix.arity()) +
                            " qubits bound to " + std::to_string(wires.size()) +
                            " wires");
  }
  for (std::size_t a = 0; a < wires.size(); ++a) {
    if (wires[a] < 1) {
      throw std::domain_error("wire indices start at 1");
    }
    for (std::size_t b = a + 1; b < wires.size(); ++b) {
      if (wires[a] == wires[b]) {
        throw std::domain_error("repeated wire " + std::to_string(wires[a]));
      }
    }
  }
}

namespace ops {
GateOp h(int wire) { return {GateKind::H, hadamard(), {wire}}; }
GateOp x(int wire) { return {GateKind::X, pauli_x(), {wire}}; }
GateOp z(int wire) { return {GateKind::Z, pauli_z(), {wire}}; }
GateOp cnot(int control, int target) {
  return {GateKind::CNOT, qdesk::cnot(), {control, target}};
}
GateOp swap(int a, int b) { return {GateKind::SWAP, swap_gate(), {a, b}}; }
GateOp toffoli(int control1, int control2, int target) {
  return {GateKind::TOFFOLI, qdesk::toffoli(), {control1, control2, target}};
}
GateOp cphase(int a, int b, int j, int k) {
  return {GateKind::CPHASE, controlled_phase(j, k), {a, b}, j, k};
}
GateOp custom(GateMatrix matrix, std::vector<int> wires) {
  return {GateKind::CUSTOM, std::move(matrix), std::move(wires)};
}
}  // namespace ops

Circuit::Circuit(int n_wires) : n_wires_(n_wires) {
  if (n_wires < 1) throw std::domain_error("circuit needs at least one wire");
}

Circuit& Circuit::add(GateOp op) {
  for (int w : op.wires) {
    if (w > n_wires_) {
      throw std::domain_error("wire " + std::to_string(w) +
                              " outside circuit of " + std::to_string(n_wires_) +
                              " wires");
    }
  }
  ops_.push_back(std::move(op));
  return *this;
}

Circuit& Circuit::append(const Circuit& other) {
  for (const auto& op : other.ops()) add(op);
  return *this;
}

std::size_t Circuit::count(GateKind kind) const {
  return static_cast<std::size_t>(std::count_if(
      ops_.begin(), ops_.end(), [kind](const GateOp& op) { return op.kind == kind; }));
}

Matrix extend_to_register(const GateOp& op, int n_wires) {
  if (n_wires > kMaxMatrixQubits) {
    throw std::length_error("refusing to materialize a " +
                            std::to_string(n_wires) + "-qubit matrix");
  }
  const Eigen::Index dim = Eigen::Index{1} << n_wires;
  const int arity = op.arity();
  Matrix full = Matrix::Zero(dim, dim);
  // Column `in` holds the image of basis vector V_in: the gate's local input
  // is read off the bound wires, each local output replaces those bits, and
  // every other wire passes through unchanged.
  for (Eigen::Index in = 0; in < dim; ++in) {
    int local_in = 0;
    for (int q = 0; q < arity; ++q) {
      const int bit = (in >> (n_wires - op.wires[q])) & 1;
      local_in = (local_in << 1) | bit;
    }
    for (int local_out = 0; local_out < (1 << arity); ++local_out) {
      Eigen::Index out = in;
      for (int q = 0; q < arity; ++q) {
        const Eigen::Index mask = Eigen::Index{1} << (n_wires - op.wires[q]);
        const bool bit = (local_out >> (arity - 1 - q)) & 1;
        out = bit ? (out | mask) : (out & ~mask);
      }
      full(out, in) += op.matrix(local_out, local_in);
    }
  }
  return full;
}

Matrix expand_to_matrix(const Circuit& circuit) {
  const int n = circuit.n_wires();
  if (n > kMaxMatrixQubits) {
    throw std::length_error("expand_to_matrix supports at most " +
                            std::to_string(kMaxMatrixQubits) + " wires");
  }
  const Eigen::Index dim = Eigen::Index{1} << n;
  Matrix u = Matrix::Identity(dim, dim);
  for (const auto& op : circuit.ops()) {
    u = extend_to_register(op, n) * u;
  }
  return u;
}

PhaseFlip phase_flip_zero(int n_qubits) {
  if (n_qubits < 1 || n_qubits > kMaxQubits) {
    throw std::domain_error("phase flip width out of range");
  }
  return {n_qubits, [](std::uint64_t i) { return i == 0; }};
}

PhaseFlip phase_flip_target(int n_qubits,
                            std::function<bool(std::uint64_t)> predicate) {
  if (n_qubits < 1 || n_qubits > kMaxQubits) {
    throw std::domain_error("phase flip width out of range");
  }
  return {n_qubits, std::move(predicate)};
}

RoutingResult route_linear(const Circuit& circuit) {
  RoutingResult result{Circuit(circuit.n_wires()), 0};
  Circuit& out = result.circuit;
  for (const auto& op : circuit.ops()) {
    if (op.arity() == 3) {
      throw std::domain_error(
          "route_linear handles one- and two-qubit gates only");
    }
    if (op.arity() == 1 || std::abs(op.wires[0] - op.wires[1]) == 1) {
      out.add(op);
      continue;
    }
    const int target = op.wires[1];
    const int step = op.wires[0] < target ? 1 : -1;
    std::vector<GateOp> walk;
    int pos = op.wires[0];
    while (std::abs(target - pos) > 1) {
      walk.push_back(ops::swap(pos, pos + step));
      pos += step;
    }
    for (const auto& s : walk) out.add(s);
    GateOp moved = op;
    moved.wires = {pos, target};
    out.add(std::move(moved));
    for (auto it = walk.rbegin(); it != walk.rend(); ++it) out.add(*it);
    result.swaps_inserted += 2 * walk.size();
  }
  return result;
}

}  // namespace qdesk
