#include "qdesk/qft.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "qdesk/statevec.hpp"

namespace qdesk {
namespace {

Complex fourier_entry(std::uint64_t a, std::uint64_t b, int k) {
  const std::uint64_t mask = (std::uint64_t{1} << k) - 1;
  // Reduce a*b mod 2^k in integers so the phase stays exact for large k.
  const std::uint64_t ab = (a * b) & mask;
  const double angle = 2.0 * std::numbers::pi * std::ldexp(static_cast<double>(ab), -k);
  return std::polar(1.0 / std::sqrt(std::ldexp(1.0, k)), angle);
}

std::uint64_t reverse_bits(std::uint64_t v, int width) {
  std::uint64_t r = 0;
  for (int i = 0; i < width; ++i) r |= ((v >> i) & 1U) << (width - 1 - i);
  return r;
}

bool keeps_phase(int j, int level, std::optional<int> cutoff) {
  return !cutoff || (level + 1 - j) <= *cutoff;
}

}  // namespace

void QftSpec::validate() const {
  if (qubits < 1 || qubits > kMaxQubits) {
    throw std::domain_error("qft qubits must be in [1, " +
                            std::to_string(kMaxQubits) + "]");
  }
  if (cutoff && (*cutoff < 1 || *cutoff > qubits)) {
    throw std::domain_error("qft cutoff must be in [1, qubits]");
  }
}

Matrix dft_matrix(int k) {
  if (k < 1 || k > kMaxMatrixQubits) {
    throw std::length_error("dft_matrix supports 1 <= k <= " +
                            std::to_string(kMaxMatrixQubits));
  }
  const Eigen::Index dim = Eigen::Index{1} << k;
  Matrix f(dim, dim);
  for (Eigen::Index b = 0; b < dim; ++b) {
    for (Eigen::Index a = 0; a < dim; ++a) {
      f(b, a) = fourier_entry(static_cast<std::uint64_t>(a),
                              static_cast<std::uint64_t>(b), k);
    }
  }
  return f;
}

Circuit build_qft_circuit(const QftSpec& spec) {
  spec.validate();
  const int k = spec.qubits;
  Circuit circuit(k);
  circuit.add(ops::h(1));
  for (int level = 1; level < k; ++level) {
    const int units_wire = level + 1;
    for (int j = 0; j < level; ++j) {
      if (keeps_phase(j, level, spec.cutoff)) {
        circuit.add(ops::cphase(units_wire, j + 1, j, level));
      }
    }
    circuit.add(ops::h(units_wire));
  }
  if (spec.bit_reversal_swaps) {
    for (int w = 1; w <= k / 2; ++w) circuit.add(ops::swap(w, k + 1 - w));
  }
  return circuit;
}

std::size_t qft_phase_count(int k, std::optional<int> cutoff) {
  std::size_t n = 0;
  for (int level = 1; level < k; ++level) {
    for (int j = 0; j < level; ++j) n += keeps_phase(j, level, cutoff) ? 1 : 0;
  }
  return n;
}

double qft_fidelity(int k, const Circuit& circuit, OutputOrder order) {
  if (k < 1 || k > kMaxFidelityQubits) {
    throw std::domain_error("qft_fidelity supports 1 <= k <= " +
                            std::to_string(kMaxFidelityQubits));
  }
  if (circuit.n_wires() != k) {
    throw std::domain_error("circuit has " + std::to_string(circuit.n_wires()) +
                            " wires, expected " + std::to_string(k));
  }
  const std::uint64_t dim = std::uint64_t{1} << k;
  double worst = 1.0;
  for (std::uint64_t a = 0; a < dim; ++a) {
    const StateVector out = apply_circuit(init_basis(k, a), circuit);
    Complex overlap(0);
    for (std::uint64_t b = 0; b < dim; ++b) {
      const std::uint64_t at = order == OutputOrder::Standard ? b : reverse_bits(b, k);
      overlap += std::conj(fourier_entry(a, b, k)) * out[at];
    }
    worst = std::min(worst, std::norm(overlap));
  }
  return worst;
}

}  // namespace qdesk
