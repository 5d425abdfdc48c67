#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace qdesk {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

inline constexpr double kUnitaryTolerance = 1e-10;

// Largest register the dense simulator accepts (2^24 amplitudes ~ 256 MB).
inline constexpr int kMaxQubits = 24;

// Largest register for which full 2^n x 2^n matrices are materialized.
inline constexpr int kMaxMatrixQubits = 10;

// Maximum deviation of M * M^H from the identity, entrywise.
double unitarity_error(const Matrix& m);

/// A unitary acting on 1, 2 or 3 qubits. Row/column index bits are ordered
/// like the wires the gate is bound to: the first wire is the most
/// significant bit of the local index.
class GateMatrix {
 public:
  /// Throws std::domain_error unless `entries` is 2^arity square and unitary
  /// to within kUnitaryTolerance.
  explicit GateMatrix(Matrix entries);

  int arity() const { return arity_; }
  const Matrix& entries() const { return entries_; }
  Complex operator()(Eigen::Index row, Eigen::Index col) const {
    return entries_(row, col);
  }

 private:
  int arity_;
  Matrix entries_;
};

GateMatrix identity_gate(int arity);
GateMatrix hadamard();
GateMatrix pauli_x();
GateMatrix pauli_z();
GateMatrix cnot();
GateMatrix swap_gate();
GateMatrix toffoli();
// diag(1, 1, 1, exp(2 pi i / 2^(k+1-j))); requires 0 <= j < k.
GateMatrix controlled_phase(int j, int k);

enum class GateKind { H, X, Z, CNOT, SWAP, TOFFOLI, CPHASE, CUSTOM };

std::string_view gate_name(GateKind kind);

/// A gate bound to an ordered list of distinct 1-based wires.
struct GateOp {
  GateKind kind;
  GateMatrix matrix;
  std::vector<int> wires;
  // Recursion indices of a CPHASE gate, zero otherwise.
  int phase_j = 0;
  int phase_k = 0;

  GateOp(GateKind kind, GateMatrix matrix, std::vector<int> wires,
         int phase_j = 0, int phase_k = 0);

  int arity() const { return matrix.arity(); }
  bool is_phase() const { return kind == GateKind::CPHASE; }
};

namespace ops {
GateOp h(int wire);
GateOp x(int wire);
GateOp z(int wire);
GateOp cnot(int control, int target);
GateOp swap(int a, int b);
GateOp toffoli(int control1, int control2, int target);
GateOp cphase(int a, int b, int j, int k);
GateOp custom(GateMatrix matrix, std::vector<int> wires);
}  // namespace ops

/// An ordered gate sequence over n_wires wires.
class Circuit {
 public:
  explicit Circuit(int n_wires);

  int n_wires() const { return n_wires_; }
  const std::vector<GateOp>& ops() const { return ops_; }
  std::size_t size() const { return ops_.size(); }
  bool empty() const { return ops_.empty(); }

  /// Throws std::domain_error if any wire is outside [1, n_wires].
  Circuit& add(GateOp op);
  Circuit& append(const Circuit& other);

  std::size_t count(GateKind kind) const;

 private:
  int n_wires_;
  std::vector<GateOp> ops_;
};

/// Tensor extension of one gate to the full n-qubit space, written out
/// entry by entry from the induced action on basis vectors.
Matrix extend_to_register(const GateOp& op, int n_wires);

/// Product of the tensor-extended gate matrices in application order.
/// Refuses (std::length_error) above kMaxMatrixQubits wires.
Matrix expand_to_matrix(const Circuit& circuit);

/// Sign-flip oracle: -1 on every basis index the predicate accepts.
struct PhaseFlip {
  int n_qubits;
  std::function<bool(std::uint64_t)> marks;

  double sign(std::uint64_t index) const { return marks(index) ? -1.0 : 1.0; }
};

PhaseFlip phase_flip_zero(int n_qubits);
PhaseFlip phase_flip_target(int n_qubits,
                            std::function<bool(std::uint64_t)> predicate);

struct RoutingResult {
  Circuit circuit;
  std::size_t swaps_inserted = 0;
};

/// Rewrites the circuit so that every two-qubit gate acts on adjacent wires.
/// The first wire of a distant pair is walked next to the second by adjacent
/// swaps and walked back afterwards. Three-qubit gates are rejected.
RoutingResult route_linear(const Circuit& circuit);

}  // namespace qdesk
