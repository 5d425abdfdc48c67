#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qdesk/gates.hpp"
#include "qdesk/rng.hpp"

namespace qdesk {

template <typename Real>
using AmplitudeVector = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1>;

template <typename Real>
constexpr Real norm_tolerance() {
  if constexpr (sizeof(Real) >= sizeof(double)) {
    return Real(1e-10);
  } else {
    return Real(1e-5);
  }
}

/// Thrown when a register exceeds the simulator cap.
class ResourceError : public std::runtime_error {
 public:
  ResourceError(int required, int available)
      : std::runtime_error("register needs " + std::to_string(required) +
                           " qubits, simulator cap is " +
                           std::to_string(available)),
        required_qubits(required) {}
  int required_qubits;
};

inline void check_qubit_count(int n_qubits) {
  if (n_qubits < 1) {
    throw std::domain_error("n_qubits must be positive");
  }
  if (n_qubits > kMaxQubits) {
    throw ResourceError(n_qubits, kMaxQubits);
  }
}

// Bit position (0 = least significant) of a 1-based wire. Wire 1 is the
// most significant bit of a basis index.
constexpr int wire_bit(int wire, int n_qubits) { return n_qubits - wire; }

namespace kernel {

// Spreads the bits of `compact` around zero bits at the given ascending
// positions.
inline std::uint64_t insert_zero_bits(std::uint64_t compact,
                                      std::span<const int> sorted_positions) {
  for (int pos : sorted_positions) {
    const std::uint64_t low = compact & ((std::uint64_t{1} << pos) - 1);
    compact = ((compact >> pos) << (pos + 1)) | low;
  }
  return compact;
}

/// In-place action of a local gate on a raw amplitude array of 2^n entries.
/// No normalization requirement; this is the strided kernel every gate
/// application goes through.
template <typename Real>
void apply_matrix(Eigen::Ref<AmplitudeVector<Real>> amps, int n_qubits,
                  const Matrix& gate, std::span<const int> wires) {
  using C = std::complex<Real>;
  const int arity = static_cast<int>(wires.size());
  const std::size_t local_dim = std::size_t{1} << arity;

  // offsets[l] is the global index bit pattern of local index l.
  std::array<std::uint64_t, 8> offsets{};
  for (std::size_t l = 0; l < local_dim; ++l) {
    std::uint64_t off = 0;
    for (int q = 0; q < arity; ++q) {
      if ((l >> (arity - 1 - q)) & 1U) {
        off |= std::uint64_t{1} << wire_bit(wires[q], n_qubits);
      }
    }
    offsets[l] = off;
  }
  std::array<int, 3> positions{};
  for (int q = 0; q < arity; ++q) positions[q] = wire_bit(wires[q], n_qubits);
  std::sort(positions.begin(), positions.begin() + arity);
  const std::span<const int> sorted(positions.data(), arity);

  std::array<C, 64> m{};
  for (std::size_t r = 0; r < local_dim; ++r) {
    for (std::size_t c = 0; c < local_dim; ++c) {
      m[r * local_dim + c] = C(static_cast<Real>(gate(r, c).real()),
                               static_cast<Real>(gate(r, c).imag()));
    }
  }

  const std::uint64_t groups = std::uint64_t{1} << (n_qubits - arity);
  std::array<C, 8> in{};
  for (std::uint64_t g = 0; g < groups; ++g) {
    const std::uint64_t base = insert_zero_bits(g, sorted);
    for (std::size_t l = 0; l < local_dim; ++l) in[l] = amps[base | offsets[l]];
    for (std::size_t r = 0; r < local_dim; ++r) {
      C acc(0);
      for (std::size_t c = 0; c < local_dim; ++c) acc += m[r * local_dim + c] * in[c];
      amps[base | offsets[r]] = acc;
    }
  }
}

}  // namespace kernel

/// Probabilities of the 2^n computational basis outcomes.
struct Distribution {
  int n_qubits;
  Eigen::VectorXd probs;

  double operator[](std::uint64_t index) const {
    return probs[static_cast<Eigen::Index>(index)];
  }
  std::uint64_t size() const { return static_cast<std::uint64_t>(probs.size()); }
};

/// A normalized pure state over n qubits. Operations return new states; the
/// *_inplace members are for callers that own the state exclusively.
template <typename Real>
class BasicStateVector {
 public:
  using Scalar = std::complex<Real>;
  using Vector = AmplitudeVector<Real>;

  /// Takes ownership of an amplitude array. Throws std::domain_error if its
  /// length is not 2^n_qubits, an entry is not finite, or the squared norm
  /// differs from 1 by more than the tolerance.
  BasicStateVector(int n_qubits, Vector amps)
      : n_qubits_(n_qubits), amps_(std::move(amps)) {
    check_qubit_count(n_qubits);
    if (static_cast<std::uint64_t>(amps_.size()) != dimension()) {
      throw std::domain_error("amplitude array length must be 2^n_qubits");
    }
    if (!amps_.allFinite()) {
      throw std::domain_error("amplitudes must be finite");
    }
    check_normalized();
  }

  int n_qubits() const { return n_qubits_; }
  std::uint64_t dimension() const { return std::uint64_t{1} << n_qubits_; }
  const Vector& amplitudes() const { return amps_; }
  Scalar operator[](std::uint64_t index) const {
    return amps_[static_cast<Eigen::Index>(index)];
  }
  Real squared_norm() const { return amps_.squaredNorm(); }

  void apply_inplace(const GateOp& op) {
    for (int w : op.wires) {
      if (w < 1 || w > n_qubits_) {
        throw std::domain_error("gate wire " + std::to_string(w) +
                                " outside register of " +
                                std::to_string(n_qubits_) + " qubits");
      }
    }
    kernel::apply_matrix<Real>(amps_, n_qubits_, op.matrix.entries(),
                               op.wires);
  }

  /// Runs a circuit whose wires are a prefix of this register.
  void apply_inplace(const Circuit& circuit) {
    if (circuit.n_wires() > n_qubits_) {
      throw std::domain_error("circuit wider than the register");
    }
    for (const auto& op : circuit.ops()) apply_inplace(op);
  }

  void apply_inplace(const PhaseFlip& flip) {
    if (flip.n_qubits != n_qubits_) {
      throw std::domain_error("phase flip width does not match register");
    }
    for (std::uint64_t i = 0; i < dimension(); ++i) {
      if (flip.marks(i)) amps_[static_cast<Eigen::Index>(i)] = -amps_[static_cast<Eigen::Index>(i)];
    }
  }

  /// Applies a reversible classical map on basis labels. `map` must be a
  /// bijection of [0, 2^n); this is checked.
  void permute_inplace(const std::function<std::uint64_t(std::uint64_t)>& map) {
    Vector out = Vector::Zero(amps_.size());
    std::vector<bool> hit(dimension(), false);
    for (std::uint64_t i = 0; i < dimension(); ++i) {
      const std::uint64_t j = map(i);
      if (j >= dimension() || hit[j]) {
        throw std::domain_error("basis map is not a permutation");
      }
      hit[j] = true;
      out[static_cast<Eigen::Index>(j)] = amps_[static_cast<Eigen::Index>(i)];
    }
    amps_ = std::move(out);
  }

  /// Hadamard on every wire in [first, last].
  void hadamard_range_inplace(int first, int last) {
    for (int w = first; w <= last; ++w) apply_inplace(ops::h(w));
  }

  void check_normalized() const {
    const Real err = std::abs(amps_.squaredNorm() - Real(1));
    if (!(err <= norm_tolerance<Real>())) {
      throw std::domain_error("state is not normalized (|norm^2 - 1| = " +
                              std::to_string(static_cast<double>(err)) + ")");
    }
  }

 private:
  int n_qubits_;
  Vector amps_;
};

using StateVector = BasicStateVector<double>;

template <typename Real = double>
BasicStateVector<Real> init_basis(int n_qubits, std::uint64_t index) {
  check_qubit_count(n_qubits);
  const std::uint64_t dim = std::uint64_t{1} << n_qubits;
  if (index >= dim) {
    throw std::domain_error("basis index " + std::to_string(index) +
                            " out of range for " + std::to_string(n_qubits) +
                            " qubits");
  }
  AmplitudeVector<Real> amps = AmplitudeVector<Real>::Zero(static_cast<Eigen::Index>(dim));
  amps[static_cast<Eigen::Index>(index)] = std::complex<Real>(1);
  return BasicStateVector<Real>(n_qubits, std::move(amps));
}

template <typename Real = double>
BasicStateVector<Real> uniform_superposition(int n_qubits) {
  check_qubit_count(n_qubits);
  const auto dim = static_cast<Eigen::Index>(std::uint64_t{1} << n_qubits);
  const Real a = Real(1) / std::sqrt(static_cast<Real>(dim));
  return BasicStateVector<Real>(
      n_qubits, AmplitudeVector<Real>::Constant(dim, std::complex<Real>(a)));
}

template <typename Real>
BasicStateVector<Real> apply_gate(BasicStateVector<Real> state, const GateOp& op) {
  state.apply_inplace(op);
  return state;
}

template <typename Real>
BasicStateVector<Real> apply_circuit(BasicStateVector<Real> state,
                                     const Circuit& circuit) {
  state.apply_inplace(circuit);
  return state;
}

template <typename Real>
BasicStateVector<Real> apply_phase_flip(BasicStateVector<Real> state,
                                        const PhaseFlip& flip) {
  state.apply_inplace(flip);
  return state;
}

template <typename Real>
Distribution distribution(const BasicStateVector<Real>& state) {
  return {state.n_qubits(),
          state.amplitudes().cwiseAbs2().template cast<double>()};
}

/// Marginal distribution of the register on wires [first, last].
inline Distribution marginal(const Distribution& dist, int first, int last);

/// Independent computational-basis samples by inverse CDF over the
/// cumulative distribution, driven by an Rng seeded with `seed`.
inline std::vector<std::uint64_t> sample(const Distribution& dist,
                                         std::uint64_t seed, std::size_t shots);

template <typename Real>
std::vector<std::uint64_t> measure_all(const BasicStateVector<Real>& state,
                                       std::uint64_t seed, std::size_t shots) {
  return sample(distribution(state), seed, shots);
}

/// Integer held by wires [first, last] of a basis index, most significant
/// bit at `first`.
inline std::uint64_t extract_register(std::uint64_t index, int n_qubits,
                                      int first, int last) {
  if (first > last) throw std::domain_error("empty wire span");
  if (first < 1 || last > n_qubits) {
    throw std::domain_error("wire span outside register");
  }
  const int width = last - first + 1;
  const std::uint64_t mask = (width == 64) ? ~std::uint64_t{0}
                                           : (std::uint64_t{1} << width) - 1;
  return (index >> wire_bit(last, n_qubits)) & mask;
}

/// Zero-padded bit string of a basis index, wire 1 first.
inline std::string bit_string(std::uint64_t index, int width) {
  std::string s(static_cast<std::size_t>(width), '0');
  for (int i = 0; i < width; ++i) {
    if ((index >> (width - 1 - i)) & 1U) s[static_cast<std::size_t>(i)] = '1';
  }
  return s;
}

/// Inverse of bit_string. Throws std::invalid_argument on characters other
/// than '0' and '1'.
inline std::uint64_t parse_bit_string(std::string_view bits) {
  if (bits.empty() || bits.size() > 63) {
    throw std::invalid_argument("bit string must have 1 to 63 characters");
  }
  std::uint64_t v = 0;
  for (char ch : bits) {
    if (ch != '0' && ch != '1') {
      throw std::invalid_argument("bit string may contain only 0 and 1");
    }
    v = (v << 1) | static_cast<std::uint64_t>(ch == '1');
  }
  return v;
}

inline Distribution marginal(const Distribution& dist, int first, int last) {
  const int width = last - first + 1;
  Distribution out{width, Eigen::VectorXd::Zero(Eigen::Index{1} << width)};
  for (std::uint64_t i = 0; i < dist.size(); ++i) {
    out.probs[static_cast<Eigen::Index>(
        extract_register(i, dist.n_qubits, first, last))] += dist[i];
  }
  return out;
}

inline std::vector<std::uint64_t> sample(const Distribution& dist,
                                         std::uint64_t seed, std::size_t shots) {
  std::vector<double> cdf(dist.size());
  std::partial_sum(dist.probs.begin(), dist.probs.end(), cdf.begin());
  const double total = cdf.back();
  Rng rng = make_rng(seed);
  std::vector<std::uint64_t> out;
  out.reserve(shots);
  for (std::size_t s = 0; s < shots; ++s) {
    const double u = uniform_unit(rng) * total;
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    std::uint64_t idx = static_cast<std::uint64_t>(it - cdf.begin());
    // u can reach the last CDF value through rounding; step back onto the
    // last outcome with nonzero probability.
    if (idx >= dist.size()) {
      idx = dist.size() - 1;
      while (dist[idx] == 0.0 && idx > 0) --idx;
    }
    out.push_back(idx);
  }
  return out;
}

}  // namespace qdesk
