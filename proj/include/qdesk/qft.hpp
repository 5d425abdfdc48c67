#pragma once

#include <optional>

#include "qdesk/gates.hpp"

namespace qdesk {

struct QftSpec {
  int qubits = 1;
  // Drop controlled phases whose angle is below 2 pi / 2^cutoff.
  std::optional<int> cutoff;
  bool bit_reversal_swaps = true;

  // Throws std::domain_error on an out-of-range spec.
  void validate() const;
};

/// Fourier matrix on 2^k points, entry (b, a) = 2^(-k/2) exp(2 pi i a b / 2^k).
Matrix dft_matrix(int k);

/// Recursive QFT circuit on wires 1..k. The transform on k+1 qubits is the
/// transform on the first k, then one controlled phase between the new
/// units-bit wire and each earlier output wire, then H on the new wire.
/// That leaves output bit j on wire j+1 (reversed relative to the register
/// convention); unless disabled, floor(k/2) swaps restore the order.
Circuit build_qft_circuit(const QftSpec& spec);

/// Number of controlled phases build_qft_circuit keeps for a spec.
std::size_t qft_phase_count(int k, std::optional<int> cutoff);

enum class OutputOrder { Standard, BitReversed };

/// Minimum over basis inputs of |<exact DFT column | circuit output>|^2.
/// With OutputOrder::BitReversed the reference column is bit-reversed first,
/// which is the right comparison for circuits built without swaps.
double qft_fidelity(int k, const Circuit& circuit,
                    OutputOrder order = OutputOrder::Standard);

inline constexpr int kMaxFidelityQubits = 12;

}  // namespace qdesk
