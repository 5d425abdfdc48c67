#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qdesk/statevec.hpp"

namespace qdesk::simon {

inline constexpr int kMaxOracleBits = 12;

// Bit strings are held as integers with the first character as the most
// significant bit, matching the register convention.
using BitVector = std::uint64_t;

inline int dot(BitVector a, BitVector b) {
  return __builtin_popcountll(a & b) & 1;
}

/// f : F_2^n -> F_2^n with f(x) = f(y) exactly when x = y xor c.
struct SimonOracle {
  int n;
  BitVector c;
  std::vector<BitVector> table;

  BitVector operator()(BitVector x) const { return table[x]; }
};

/// Random oracle with hidden shift c: each coset {x, x xor c} gets its own
/// random output value. Throws std::domain_error for c = 0, c >= 2^n or n
/// outside [1, kMaxOracleBits].
SimonOracle make_oracle(int n, BitVector c, std::uint64_t seed);

/// Exhaustive check of the hidden-shift property.
bool has_hidden_shift(const SimonOracle& oracle);

/// Rows over F_2 with incremental reduction to echelon form.
class Gf2Matrix {
 public:
  explicit Gf2Matrix(int n_cols);
  Gf2Matrix(int n_cols, const std::vector<BitVector>& rows);

  /// Adds a row; returns true if it increased the rank.
  bool add_row(BitVector row);

  int n_cols() const { return n_cols_; }
  int rank() const { return static_cast<int>(basis_.size()); }
  const std::vector<BitVector>& rows() const { return rows_; }

  /// Nonzero vector orthogonal to every row; only defined at rank n_cols-1.
  BitVector null_vector() const;

 private:
  int n_cols_;
  std::vector<BitVector> rows_;
  // Reduced basis: every pivot bit appears in exactly one basis row.
  std::vector<BitVector> basis_;
};

/// Raised when the samples span all of F_2^n, which no valid oracle allows.
class InconsistentSamples : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ShiftRecovery {
  std::optional<BitVector> c;  // empty: insufficient rank
  int rank = 0;
};

ShiftRecovery recover_shift(const Gf2Matrix& samples);
ShiftRecovery recover_shift(const std::vector<BitVector>& samples, int n);

/// State of the 2n-qubit register right before measurement: first register
/// on wires 1..n, f(x) on wires n+1..2n.
StateVector simon_state(const SimonOracle& oracle);

/// First-register outcome probabilities.
Distribution simon_distribution(const SimonOracle& oracle);

/// One round: prepare, measure, return the first register.
BitVector simon_sample(const SimonOracle& oracle, std::uint64_t seed);

struct SimonRun {
  std::optional<BitVector> c;
  int rounds = 0;
  int hadamards = 0;
  int oracle_calls = 0;
  std::vector<BitVector> samples;
  std::string failure;
};

/// Samples until the rows reach rank n-1, then solves for c and checks
/// f(0) = f(c). Round i uses sub-seed derive_seed(seed, i).
SimonRun run_simon(const SimonOracle& oracle, int max_rounds, std::uint64_t seed);

struct ClassicalResult {
  int queries = 0;
  BitVector c = 0;
};

/// Queries f on distinct inputs in random order until two outputs collide.
ClassicalResult classical_query_baseline(const SimonOracle& oracle,
                                         std::uint64_t seed);

}  // namespace qdesk::simon
